#pragma once
#include <optional>
#include <string>
#include <string_view>

#include "cdgacyc/gralg.hpp"
#include "cdgacyc/minimal_model.hpp"

namespace cdgacyc {

// A CDGA description file: either the free form (generators + differential)
// or the finite form (basis + products + differential).
struct AlgebraFile {
    std::string name;
    std::optional<FreeCDGA> free;
    std::optional<FiniteCDGA> finite;
    bool is_free() const { return free.has_value(); }
};

// `source` is used as the default name and in error messages.
AlgebraFile parse_algebra(std::string_view text, const std::string& source = "<input>");
AlgebraFile load_algebra(const std::string& path);

// canonical forms: fixed key order, terms in basis order, zero differentials omitted
std::string emit_free(const FreeCDGA& a);
std::string emit_finite(const FiniteCDGA& a);

}  // namespace cdgacyc
