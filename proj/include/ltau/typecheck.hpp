#pragma once

#include <map>
#include <string>

#include "ltau/context_ops.hpp"
#include "ltau/signature.hpp"
#include "ltau/syntax.hpp"

namespace ltau {

// Syntax-directed checker for the modal type-and-effect system. Each rule
// failure carries the rule name in the diagnostic. Grade equality is exact;
// there is no sub-effecting.
class Checker {
public:
  explicit Checker(const SignatureTable& sig, bool skipTemporal = false)
      : sig_(sig), skipTemporal_(skipTemporal) {}

  ValueType infer_value(const Context& ctx, const ValuePtr& v);
  CompType infer_comp(const Context& ctx, const CompPtr& m);

  // Checks every clause once under a fresh rigid grade variable r: the body
  // of the clause for op must have grade exactly tau_op + r.
  struct ClauseTyping {
    std::string op;
    Grade rigid;     // the fresh r
    CompType body;   // Y ! (tau_op + r)
  };
  std::vector<ClauseTyping> check_handler(const Context& ctx, const HandlerClauses& clauses,
                                          const ValueType& result, Span sp);

  // Runs infer_comp and records (context, type, grade) on every node, plus
  // the bound-computation grade on Let/Handle nodes used downstream.
  CompType elaborate(const CompPtr& m, const Context& ctx = Context());

  const SignatureTable& sig() const { return sig_; }

private:
  const SignatureTable& sig_;
  bool skipTemporal_;
  std::uint32_t nextRigid_ = 1;

  [[noreturn]] void fail(const char* rule, const std::string& msg, Span sp,
                         const std::string& expected = "", const std::string& actual = "");
};

} // namespace ltau
