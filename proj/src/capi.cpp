#include "cdgacyc/cdgacyc.h"

#include <string>

#include "cdgacyc/commands.hpp"
#include "cdgacyc/error.hpp"

using namespace cdgacyc;

struct cdgacyc_algebra {
    AlgebraFile file;
};

struct cdgacyc_report {
    CommandResult r;
};

namespace {

thread_local std::string last_error;

int code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse: return CDGACYC_E_PARSE;
        case ErrorKind::Domain: return CDGACYC_E_DOMAIN;
        case ErrorKind::Precondition: return CDGACYC_E_PRECONDITION;
        case ErrorKind::Unsupported: return CDGACYC_E_UNSUPPORTED;
        case ErrorKind::Usage: return CDGACYC_E_USAGE;
        case ErrorKind::Io: return CDGACYC_E_IO;
        case ErrorKind::InvalidArgument: return CDGACYC_E_INVALID_ARGUMENT;
        case ErrorKind::Internal: break;
    }
    return CDGACYC_E_INTERNAL;
}

template <class F>
int guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return CDGACYC_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return code(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
    } catch (const std::exception& e) {
        last_error = e.what();
    } catch (...) {
        last_error = "unknown failure";
    }
    return CDGACYC_E_INTERNAL;
}

int null_arg(const char* what) {
    last_error = std::string("null argument: ") + what;
    return CDGACYC_E_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

void cdgacyc_options_init(cdgacyc_options* o) {
    if (!o) return;
    o->cutoff = 12;
    o->weight_max = -1;
    o->per_weight = 0;
    o->seed = 0;
    o->corrupt_bar_sign = 0;
}

int cdgacyc_algebra_load(const char* path, cdgacyc_algebra** out) {
    if (!path || !out) return null_arg("path/out");
    *out = nullptr;
    return guarded([&] { *out = new cdgacyc_algebra{load_algebra(path)}; });
}

int cdgacyc_algebra_parse(const char* text, size_t len, const char* source, cdgacyc_algebra** out) {
    if (!text || !out) return null_arg("text/out");
    *out = nullptr;
    return guarded([&] {
        *out = new cdgacyc_algebra{parse_algebra(std::string_view(text, len), source ? source : "<input>")};
    });
}

int cdgacyc_algebra_is_finite(const cdgacyc_algebra* a) { return a && !a->file.is_free(); }
const char* cdgacyc_algebra_name(const cdgacyc_algebra* a) { return a ? a->file.name.c_str() : ""; }
void cdgacyc_algebra_free(cdgacyc_algebra* a) { delete a; }

int cdgacyc_command_known(const char* command) { return command && known_command(command); }

int cdgacyc_run(const cdgacyc_algebra* a, const char* command, const cdgacyc_options* o, cdgacyc_report** out) {
    if (!a || !command || !out) return null_arg("algebra/command/out");
    *out = nullptr;
    cdgacyc_options def;
    cdgacyc_options_init(&def);
    if (!o) o = &def;
    CommandOptions co;
    co.cutoff = o->cutoff;
    if (o->weight_max >= 0) co.weight_max = o->weight_max;
    co.per_weight = o->per_weight != 0;
    co.seed = o->seed;
    co.corrupt_bar_sign = o->corrupt_bar_sign != 0;
    return guarded([&] { *out = new cdgacyc_report{run_command(command, a->file, co)}; });
}

const char* cdgacyc_report_text(const cdgacyc_report* r) { return r ? r->r.text.c_str() : ""; }
const char* cdgacyc_report_json(const cdgacyc_report* r) { return r ? r->r.json.c_str() : ""; }
const char* cdgacyc_report_emitted(const cdgacyc_report* r) { return r ? r->r.emitted.c_str() : ""; }
int cdgacyc_report_passed(const cdgacyc_report* r) { return r && r->r.passed; }
void cdgacyc_report_free(cdgacyc_report* r) { delete r; }

const char* cdgacyc_last_error(void) { return last_error.c_str(); }

const char* cdgacyc_status_name(int s) {
    switch (s) {
        case CDGACYC_OK: return "ok";
        case CDGACYC_E_PARSE: return "parse error";
        case CDGACYC_E_DOMAIN: return "invalid algebra";
        case CDGACYC_E_PRECONDITION: return "precondition failed";
        case CDGACYC_E_UNSUPPORTED: return "unsupported configuration";
        case CDGACYC_E_USAGE: return "usage error";
        case CDGACYC_E_IO: return "i/o error";
        case CDGACYC_E_INVALID_ARGUMENT: return "invalid argument";
        default: return "internal error";
    }
}

const char* cdgacyc_version(void) { return "0.1.0"; }

}  // extern "C"
