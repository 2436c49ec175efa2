#pragma once

#include "ltau/typecheck.hpp"

namespace ltau {

// Directed normalizer for the beta fragment of the equational theory plus
// the delay-collapsing equations. Input must be elaborated (bound grades
// present); output re-typechecks at the same type and grade.
//
// Rules, oriented left to right: beta-app, beta-match, beta-let-return,
// let-assoc, op-let hoist, delay-let hoist, handle-return, handle-op,
// handle-delay, beta-unbox-of-box, delay-0 removal, delay-delay collapse.
// Termination measure: handler applications strictly shrink the handled
// tree, let hoists strictly decrease the nesting depth of let-bound lets
// and op/delay prefixes, and every beta rule eliminates one constructor;
// eta equations are deliberately not oriented.
CompPtr normalize(const CompPtr& m, const SignatureTable& sig);

enum class Equiv { Equal, Unknown };

// Sound, incomplete program equivalence: Equal when the normal forms are
// alpha-equivalent. Both inputs must be well-typed at the same type and
// grade in `ctx`.
Equiv check_equiv(const CompPtr& m, const CompPtr& n, const SignatureTable& sig,
                  const Context& ctx = Context());

} // namespace ltau
