#pragma once

#include <string>

#include "ltau/syntax.hpp"

namespace ltau {

// Concrete-syntax printers. parse(pretty(t)) is alpha-equivalent to t.
std::string pretty(const ValuePtr& v);
std::string pretty(const CompPtr& m);

} // namespace ltau
