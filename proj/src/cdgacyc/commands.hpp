#pragma once
#include <optional>
#include <string>

#include "cdgacyc/algebra_file.hpp"

namespace cdgacyc {

struct CommandOptions {
    int cutoff = 12;
    std::optional<int> weight_max;
    bool per_weight = false;
    unsigned seed = 0;
    bool corrupt_bar_sign = false;  // negative control for `check`
};

struct CommandResult {
    std::string text;
    std::string json;     // always filled
    std::string emitted;  // minimal-model: the model as a free-form file
    bool passed = true;   // false makes the CLI exit with 1
};

// cohomology | hh | ch | ph | sh | euler | check | minimal-model | verify-minimal
CommandResult run_command(const std::string& command, const AlgebraFile& f, const CommandOptions& o);
bool known_command(const std::string& command);

}  // namespace cdgacyc
