#pragma once

#include "ltau/signature.hpp"
#include "ltau/syntax.hpp"

namespace ltau {

// Capture-avoiding substitution J[W/x] for terms with globally fresh
// binders. W's binders are refreshed at every insertion site, so the global
// freshness invariant is preserved.
//
// The unbox case follows the substitution theorem's analysis: the boxed
// value V of unbox_tau sits in the context (G, x:X, G') - tau, so W is
// substituted into V only when tau <= time G' — the elapsed grade between
// x's binding and the unbox. `elapsed` starts the bookkeeping at x's
// binding site and grows across modalities; Let/Handle nodes must carry
// their bound grades (filled by elaboration).
ValuePtr subst(const ValuePtr& v, const ValuePtr& w, const std::string& x,
               const SignatureTable& sig, Grade elapsed = Grade::zero());
CompPtr subst(const CompPtr& m, const ValuePtr& w, const std::string& x,
              const SignatureTable& sig, Grade elapsed = Grade::zero());

} // namespace ltau
