// Command-line front end.  Talks to the engine only through the C API.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "cdgacyc/cdgacyc.h"

namespace {

int input_error(int status) {
    std::cerr << "cdgacyc: " << cdgacyc_status_name(status) << ": " << cdgacyc_last_error() << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Derived functors of connected CDGAs via the free-loop construction"};
    app.set_version_flag("--version", std::string(cdgacyc_version()));
    std::string command, file, emit;
    int cutoff = 12, weight_max = -1;
    unsigned seed = 0;
    bool per_weight = false, json = false, corrupt = false;
    app.add_option("command", command,
                   "cohomology | hh | ch | ph | sh | euler | check | minimal-model | verify-minimal")
        ->required();
    app.add_option("file", file, "algebra description (JSON)")->required();
    app.add_option("--cutoff", cutoff, "degree cutoff N")->capture_default_str();
    app.add_option("--weight-max", weight_max, "largest weight computed (required with degree-1 generators)");
    app.add_flag("--per-weight", per_weight, "list dimensions by weight");
    app.add_flag("--json", json, "machine-readable output");
    app.add_option("--emit", emit, "minimal-model: write the model to this file");
    app.add_option("--seed", seed, "minimal-model tie-breaking seed (0 = deterministic)");
    app.add_flag("--corrupt-bar-sign", corrupt, "negative control: flip the sign of delta on barred generators");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (!cdgacyc_command_known(command.c_str())) {
        std::cerr << "cdgacyc: unknown command '" << command << "'\n" << app.help();
        return 2;
    }
    if (!emit.empty() && command != "minimal-model") {
        std::cerr << "cdgacyc: --emit only applies to minimal-model\n";
        return 2;
    }

    cdgacyc_algebra* alg = nullptr;
    int st = cdgacyc_algebra_load(file.c_str(), &alg);
    if (st != CDGACYC_OK) return input_error(st);

    cdgacyc_options o;
    cdgacyc_options_init(&o);
    o.cutoff = cutoff;
    o.weight_max = weight_max;
    o.per_weight = per_weight;
    o.seed = seed;
    o.corrupt_bar_sign = corrupt;
    cdgacyc_report* rep = nullptr;
    st = cdgacyc_run(alg, command.c_str(), &o, &rep);
    cdgacyc_algebra_free(alg);
    if (st != CDGACYC_OK) return input_error(st);

    std::cout << (json ? cdgacyc_report_json(rep) : cdgacyc_report_text(rep));
    int rc = cdgacyc_report_passed(rep) ? 0 : 1;
    if (!emit.empty()) {
        std::ofstream out(emit, std::ios::binary);
        out << cdgacyc_report_emitted(rep);
        if (!out) {
            std::cerr << "cdgacyc: cannot write '" << emit << "'\n";
            rc = 2;
        }
    }
    cdgacyc_report_free(rep);
    return rc;
}
