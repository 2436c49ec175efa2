#pragma once

#include <string>

#include "ltau/signature.hpp"
#include "ltau/syntax.hpp"

namespace ltau {

// Parse a program against a loaded signature. Every op reference is resolved,
// binders are alpha-normalized to globally fresh names, and source positions
// are retained for diagnostics.
CompPtr parse_program(const std::string& text, const SignatureTable& sig,
                      const std::string& filename = "<input>");

// Parse a value type (used by tests and tools).
ValueType parse_value_type(const std::string& text, const std::string& filename = "<type>");

} // namespace ltau
