#ifndef CDGACYC_H
#define CDGACYC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CDGACYC_API __declspec(dllexport)
#else
#define CDGACYC_API __attribute__((visibility("default")))
#endif

/* Status codes.  Every call that can fail returns one of these; the message of
   the most recent failure on the calling thread is kept by cdgacyc_last_error. */
enum {
    CDGACYC_OK = 0,
    CDGACYC_E_PARSE = 1,        /* malformed algebra file */
    CDGACYC_E_DOMAIN = 2,       /* file parsed but does not describe a valid CDGA */
    CDGACYC_E_PRECONDITION = 3, /* an axiom or chain-map condition fails */
    CDGACYC_E_UNSUPPORTED = 4,  /* outside the supported configurations */
    CDGACYC_E_USAGE = 5,        /* bad command or option */
    CDGACYC_E_IO = 6,
    CDGACYC_E_INTERNAL = 7,
    CDGACYC_E_INVALID_ARGUMENT = 8
};

typedef struct cdgacyc_algebra cdgacyc_algebra;
typedef struct cdgacyc_report cdgacyc_report;

typedef struct cdgacyc_options {
    int cutoff;           /* degree cutoff N, default 12 */
    int weight_max;       /* -1: unset (defaults to the cutoff) */
    int per_weight;       /* text tables list dimensions by weight */
    unsigned seed;        /* minimal model builder tie-breaking, 0 = deterministic */
    int corrupt_bar_sign; /* negative control: flip the sign of delta on barred generators */
} cdgacyc_options;

CDGACYC_API void cdgacyc_options_init(cdgacyc_options* o);

CDGACYC_API int cdgacyc_algebra_load(const char* path, cdgacyc_algebra** out);
CDGACYC_API int cdgacyc_algebra_parse(const char* text, size_t len, const char* source, cdgacyc_algebra** out);
CDGACYC_API int cdgacyc_algebra_is_finite(const cdgacyc_algebra* a);
CDGACYC_API const char* cdgacyc_algebra_name(const cdgacyc_algebra* a);
CDGACYC_API void cdgacyc_algebra_free(cdgacyc_algebra* a);

/* command: cohomology, hh, ch, ph, sh, euler, check, minimal-model, verify-minimal */
CDGACYC_API int cdgacyc_command_known(const char* command);
CDGACYC_API int cdgacyc_run(const cdgacyc_algebra* a, const char* command, const cdgacyc_options* o,
                            cdgacyc_report** out);
CDGACYC_API const char* cdgacyc_report_text(const cdgacyc_report* r);
CDGACYC_API const char* cdgacyc_report_json(const cdgacyc_report* r);
/* minimal-model only: the model as a free-form algebra file, otherwise "" */
CDGACYC_API const char* cdgacyc_report_emitted(const cdgacyc_report* r);
/* 1 when every audited property holds */
CDGACYC_API int cdgacyc_report_passed(const cdgacyc_report* r);
CDGACYC_API void cdgacyc_report_free(cdgacyc_report* r);

CDGACYC_API const char* cdgacyc_last_error(void);
CDGACYC_API const char* cdgacyc_status_name(int status);
CDGACYC_API const char* cdgacyc_version(void);

#ifdef __cplusplus
}
#endif

#endif
