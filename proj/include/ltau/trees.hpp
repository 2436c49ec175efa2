#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ltau/signature.hpp"

namespace ltau {

struct TreeNode;
using CompTree = std::shared_ptr<const TreeNode>;

class SemValue;
using SemFun = std::function<CompTree(const SemValue&, std::uint64_t now)>;
using Cont = std::function<CompTree(const SemValue&)>;

// Runtime values. BoxedV realizes [tau]X at a concrete clock: the payload
// may be inspected once the absolute virtual time availableAt is reached.
// TreeV lets leaves of a tree hold trees, which is what the graded-monad
// multiplication and the handling morphism consume.
class SemValue {
public:
  struct BaseElem { std::string base, elem; };
  struct UnitV {};
  struct PairV;
  struct FunV { SemFun fn; };
  struct BoxedV { std::uint64_t availableAt; std::shared_ptr<const SemValue> payload; std::uint64_t id; };
  struct TreeV { CompTree tree; };
  struct Node;

  SemValue(); // unit

  static SemValue elem(std::string base, std::string e);
  static SemValue unit();
  static SemValue pair(SemValue a, SemValue b);
  static SemValue fun(SemFun f);
  static SemValue boxed(std::uint64_t availableAt, SemValue payload, std::uint64_t id = 0);
  static SemValue tree(CompTree t);

  template <class T> const T* get() const;
  template <class T> bool holds() const { return get<T>() != nullptr; }
  std::size_t index() const;
  std::string str() const;

private:
  explicit SemValue(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};
struct SemValue::PairV { SemValue fst, snd; };
struct SemValue::Node {
  std::variant<BaseElem, UnitV, PairV, FunV, BoxedV, TreeV> v;
};
template <class T> const T* SemValue::get() const { return std::get_if<T>(&node_->v); }
inline std::size_t SemValue::index() const { return node_->v.index(); }

// Computation trees: the free graded monad over the operation signature,
// with an extra delay constructor. Grade of a tree = sum over the spine of
// op durations and delays.
struct RetNode { SemValue value; };
struct OpTreeNode {
  std::string op;
  SemValue arg;
  Cont cont; // total on the op's result carrier
};
struct DelayTreeNode {
  std::uint64_t tau;
  CompTree cont;
};
struct TreeNode {
  std::variant<RetNode, OpTreeNode, DelayTreeNode> v;
};

CompTree t_ret(SemValue v);
CompTree t_delay(std::uint64_t tau, CompTree cont); // does not canonicalize
CompTree t_op(const std::string& op, SemValue arg, Cont cont, const SignatureTable& sig);

// eta^T : A -> T 0 A
inline CompTree eta(SemValue v) { return t_ret(std::move(v)); }

// Kleisli extension: replace each leaf value by the tree k produces for it.
CompTree bind_tree(const CompTree& t, const Cont& k);

// mu^T : T t1 (T t2 A) -> T (t1+t2) A. Leaves must hold TreeV values.
CompTree mu(const CompTree& t);

// str^T : [tau] A x T tau B -> T tau (A x B). `avail` is the payload's
// availability relative to the root of `t` and must equal the grade of `t`;
// it shrinks on the way down and must be 0 at each leaf (bug assertion).
CompTree strength(const SemValue& payload, std::uint64_t avail, const CompTree& t,
                  const SignatureTable& sig);

// Map over leaf values without touching the spine.
CompTree map_tree(const CompTree& t, const std::function<SemValue(const SemValue&)>& f);

// Canonical form of Section "quotienting delays": no zero delays, no
// consecutive delays. Continuations canonicalize on demand.
CompTree canonicalize_delays(const CompTree& t);

// A semantic handler clause: receives the op argument, the boxed resumption
// (available tau_op after `now`), and the absolute time of the op node.
using SemClause = std::function<CompTree(const SemValue& arg, const SemValue& boxedCont,
                                         std::uint64_t now)>;
using SemClauses = std::map<std::string, SemClause>;

// chi: the handling morphism. Ret leaves must hold TreeV values (the
// already-interpreted continuation); op nodes are replaced by their clause;
// delays pass through untouched.
CompTree handle_chi(const SemClauses& clauses, const CompTree& t, const SignatureTable& sig,
                    std::uint64_t now = 0);

// Grade of a tree, probing op continuations with the first carrier element.
std::uint64_t tree_grade(const CompTree& t, const SignatureTable& sig);

// Enumerate the runtime carrier of a ground type as seen at absolute time
// `at`: boxed values carry availability at + their grade.
std::vector<SemValue> enumerate_carrier(const GroundType& g, std::uint64_t at,
                                        const SignatureTable& sig);

// Decidable equality of canonical trees: continuations compared pointwise
// over the op's full (finite) result carrier. Throws CarrierNotFinite-style
// errors on function values outside op carriers.
bool tree_eq(const CompTree& a, const CompTree& b, const SignatureTable& sig,
             std::uint64_t at = 0);
bool sem_value_eq(const SemValue& a, const SemValue& b, const SignatureTable& sig);

// Carrier-expanded debug serialization (JSON text) for golden tests.
std::string serialize_tree(const CompTree& t, const SignatureTable& sig, std::uint64_t at = 0);

struct CarrierError : LtauError {
  using LtauError::LtauError;
};

} // namespace ltau
