/* Exercises the C API from plain C. */
#include <stdio.h>
#include <string.h>

#include "cdgacyc/cdgacyc.h"

static int failures = 0;
#define EXPECT(c)                                              \
    do {                                                       \
        if (!(c)) {                                            \
            fprintf(stderr, "FAIL line %d: %s\n", __LINE__, #c); \
            ++failures;                                        \
        }                                                      \
    } while (0)

int main(void) {
    const char* s3 = "{\"name\": \"s3\", \"generators\": [{\"name\": \"x\", \"degree\": 3}]}";
    cdgacyc_algebra* a = NULL;
    EXPECT(cdgacyc_algebra_parse(s3, strlen(s3), "s3.json", &a) == CDGACYC_OK);
    EXPECT(a != NULL);
    EXPECT(!cdgacyc_algebra_is_finite(a));
    EXPECT(strcmp(cdgacyc_algebra_name(a), "s3") == 0);

    cdgacyc_options o;
    cdgacyc_options_init(&o);
    o.cutoff = 6;
    cdgacyc_report* r = NULL;
    EXPECT(cdgacyc_run(a, "hh", &o, &r) == CDGACYC_OK);
    EXPECT(strstr(cdgacyc_report_json(r), "\"total\": 1") != NULL);
    EXPECT(cdgacyc_report_passed(r));
    cdgacyc_report_free(r);

    EXPECT(cdgacyc_run(a, "nope", &o, &r) == CDGACYC_E_USAGE);
    EXPECT(r == NULL);
    EXPECT(strstr(cdgacyc_last_error(), "unknown command") != NULL);
    EXPECT(cdgacyc_run(NULL, "hh", &o, &r) == CDGACYC_E_INVALID_ARGUMENT);
    cdgacyc_algebra_free(a);

    const char* bad = "{\"generators\": [{\"name\": \"x\", \"degree\": 3}],}";
    EXPECT(cdgacyc_algebra_parse(bad, strlen(bad), "bad.json", &a) == CDGACYC_E_PARSE);
    EXPECT(strstr(cdgacyc_last_error(), "bad.json:1:") != NULL);

    const char* fin = "{\"basis\": [{\"name\": \"1\", \"degree\": 0}, {\"name\": \"a\", \"degree\": 2}]}";
    EXPECT(cdgacyc_algebra_parse(fin, strlen(fin), "s2c.json", &a) == CDGACYC_OK);
    EXPECT(cdgacyc_algebra_is_finite(a));
    EXPECT(cdgacyc_run(a, "minimal-model", &o, &r) == CDGACYC_OK);
    EXPECT(strstr(cdgacyc_report_emitted(r), "\"x3\"") != NULL);
    cdgacyc_report_free(r);
    cdgacyc_algebra_free(a);

    EXPECT(strcmp(cdgacyc_status_name(CDGACYC_E_IO), "i/o error") == 0);
    printf("%s\n", failures ? "capi tests failed" : "capi tests passed");
    return failures != 0;
}
