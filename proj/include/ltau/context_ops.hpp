#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ltau/context.hpp"

namespace ltau {

// time Gamma: total grade of the modalities in a context.
Grade ctx_time(const Context& ctx);

// The "time travelling" operation Gamma minus tau, for concrete tau:
//   G - 0 = G
//   . - t+ = .
//   (G, x:X) - t+ = G - t+
//   (G, <t'>) - t+ = if t+ <= t' then G, <t' - t+> else G - (t+ - t')
// Throws SymbolicUnderflow when a comparison against a symbolic modality has
// no uniform answer.
Context ctx_minus(const Context& ctx, const Grade& tau);

// Timed variable lookup: x's type together with the total grade of the
// modalities strictly to the right of its binding.
struct TimedLookup {
  ValueType type;
  Grade elapsed;
};
std::optional<TimedLookup> var_lookup(const Context& ctx, const std::string& name);

} // namespace ltau
