#pragma once

#include <memory>
#include <string>

#include "ltau/context_ops.hpp"
#include "ltau/syntax.hpp"

namespace ltau {

// The renaming relation rho : G ~> G' as a derivation tree over the
// structural rules, so that the minus-tau operation can recurse on it and
// each constructor's side conditions stay checkable. Inverses of mon and of
// var/wk do not exist: they would let resources be unboxed too early.
class Renaming;
using RenPtr = std::shared_ptr<const Renaming>;

class Renaming {
public:
  enum class Kind {
    Id,       // G ~> G
    Compose,  // (G' ~> G'') . (G ~> G')
    Wk,       // G ~> G, x:X
    Var,      // G, y:X ~> G   (y mapped to an existing x:X in G)
    Eta,      // G, <0> ~> G
    EtaInv,   // G ~> G, <0>
    Mu,       // G, <t1+t2> ~> G, <t1>, <t2>
    MuInv,    // G, <t1>, <t2> ~> G, <t1+t2>
    Mon,      // G, <t> ~> G, <t'>   (t <= t')
    CongVar,  // G, x:X ~> G', x:X   from G ~> G'
    CongMod,  // G, <t> ~> G', <t>   from G ~> G'
  };

  Kind kind() const { return kind_; }
  const Context& source() const { return source_; }
  const Context& target() const { return target_; }

  // Primitive constructors; each checks its side conditions.
  static RenPtr id(Context g);
  static RenPtr compose(RenPtr outer, RenPtr inner); // inner first
  static RenPtr wk(const Context& g, std::string x, ValueType ty);
  static RenPtr var(const Context& g, std::string existing, std::string fresh);
  static RenPtr eta(const Context& g);
  static RenPtr eta_inv(const Context& g);
  static RenPtr mu(const Context& g, Grade t1, Grade t2);
  static RenPtr mu_inv(const Context& g, Grade t1, Grade t2);
  static RenPtr mon(const Context& g, Grade from, Grade to);
  static RenPtr cong_var(RenPtr inner, std::string x, ValueType ty);
  static RenPtr cong_mod(RenPtr inner, Grade t);

  // The variable mapping this renaming denotes.
  std::string resolve(const std::string& x) const;

  // Payload accessors used by renaming_minus.
  const RenPtr& first() const { return r1_; }
  const RenPtr& second() const { return r2_; }
  const std::string& name_a() const { return a_; }
  const std::string& name_b() const { return b_; }
  const Grade& grade_a() const { return t1_; }
  const Grade& grade_b() const { return t2_; }

private:
  Renaming(Kind k, Context src, Context tgt) : kind_(k), source_(std::move(src)), target_(std::move(tgt)) {}

  Kind kind_;
  Context source_, target_;
  RenPtr r1_, r2_;       // Compose: r1 after r2; Cong*: r1 is the inner renaming
  std::string a_, b_;    // Wk: a_ added; Var: a_ existing, b_ contracted
  ValueType ty_ = ValueType::unit();
  Grade t1_, t2_;
};

// Derived structural rules built from the primitives. `at` is the index of
// the relevant entry in `g` (counting from the left).
enum class StructuralRule {
  WeakenCtx,      // insert a fresh variable at position `at`
  ExchangeVars,   // swap the variables at `at`, `at+1`
  ExchangeVarMod, // G, <t>, x:X ~> G, x:X, <t> with the modality at `at`
  Contract,       // contract trailing duplicate-typed variable at `at` into `arg`
  SplitMod,       // <t1+t2> at `at` becomes <t1>, <t2>  (mu)
  JoinMod,        // <t1>, <t2> at `at` become <t1+t2>   (mu inverse)
  GrowMod,        // <t> at `at` grows to <t'>           (mon)
  DropZeroMod,    // trailing <0> removed                (eta)
  AddZeroMod,     // trailing <0> added                  (eta inverse)
};

struct StructuralArgs {
  std::size_t at = 0;
  Grade t1, t2;             // SplitMod: requested split; GrowMod: t2 is the new grade
  std::string var = "x";    // WeakenCtx: name stem; Contract: the surviving variable
  ValueType type = ValueType::unit();
};

RenPtr derived_structural(const Context& g, StructuralRule rule, const StructuralArgs& args);

// Prop. A.1(9): ((G - tau), <tau>) ~> G when tau <= time G.
RenPtr pra_counit(const Context& g, const Grade& tau);
// Prop. A.1(10): G ~> ((G, <tau>) - tau).
RenPtr pra_unit(const Context& g, const Grade& tau);
// Prop. A.1(11): (G - tau) ~> G.
RenPtr drop_minus(const Context& g, const Grade& tau);

// Theorem 1 action on terms: rename free variables of a term typed in
// rho.source so the result is typed in rho.target, at the same type and
// grade.
ValuePtr apply_renaming(const RenPtr& rho, const ValuePtr& v);
CompPtr apply_renaming(const RenPtr& rho, const CompPtr& m);

// Prop. A.1(14): rho - tau : (G - tau) ~> (G' - tau), by structural
// recursion on the derivation of rho.
RenPtr renaming_minus(const RenPtr& rho, const Grade& tau);

} // namespace ltau
