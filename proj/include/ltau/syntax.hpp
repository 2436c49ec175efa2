#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ltau/context.hpp"
#include "ltau/types.hpp"

namespace ltau {

struct ValueNode;
struct CompNode;
using ValuePtr = std::shared_ptr<const ValueNode>;
using CompPtr = std::shared_ptr<const CompNode>;

// Values (Fig. 3): variables, constant application, unit, pairs, functions,
// and boxing of temporal resources.
struct VVar { std::string name; };
struct VConst { std::string name; std::vector<ValuePtr> args; };
struct VUnit {};
struct VPair { ValuePtr fst, snd; };
struct VFun { std::string param; ValueType paramType; CompPtr body; };
struct VBox { Grade grade; ValuePtr payload; };

// Computations (Fig. 3).
struct CReturn { ValuePtr val; };
struct CLet { std::string var; CompPtr bound; CompPtr body; };
struct CApply { ValuePtr fn; ValuePtr arg; };
struct CMatch { ValuePtr scrut; std::string fst, snd; CompPtr body; };
struct COp { std::string op; ValuePtr arg; std::string resVar; CompPtr cont; };
struct CDelay { Grade grade; CompPtr body; };
struct HandlerClause { std::string param; std::string cont; CompPtr body; };
using HandlerClauses = std::map<std::string, HandlerClause>; // keyed by op name
struct CHandle { CompPtr body; HandlerClauses clauses; std::string var; CompPtr cont; };
struct CUnbox { Grade grade; ValuePtr boxed; std::string var; CompPtr body; };

struct ValueNode {
  std::variant<VVar, VConst, VUnit, VPair, VFun, VBox> v;
  Span span;

  // Elaboration cache; owned by the per-file checking pipeline.
  mutable std::optional<ValueType> annType;
};

struct CompNode {
  std::variant<CReturn, CLet, CApply, CMatch, COp, CDelay, CHandle, CUnbox> v;
  Span span;

  // For Let/Handle: grade of the bound computation, filled by elaborate().
  // Intrinsic to the subterm, so it stays valid across rewrites.
  mutable std::optional<Grade> boundGrade;
  mutable std::optional<CompType> annType;
  mutable std::optional<Context> annCtx;
};

// Node constructors.
ValuePtr v_var(std::string name, Span sp = {});
ValuePtr v_const(std::string name, std::vector<ValuePtr> args, Span sp = {});
ValuePtr v_unit(Span sp = {});
ValuePtr v_pair(ValuePtr a, ValuePtr b, Span sp = {});
ValuePtr v_fun(std::string param, ValueType ty, CompPtr body, Span sp = {});
ValuePtr v_box(Grade g, ValuePtr payload, Span sp = {});

CompPtr c_return(ValuePtr v, Span sp = {});
CompPtr c_let(std::string var, CompPtr bound, CompPtr body, Span sp = {});
CompPtr c_apply(ValuePtr fn, ValuePtr arg, Span sp = {});
CompPtr c_match(ValuePtr scrut, std::string fst, std::string snd, CompPtr body, Span sp = {});
CompPtr c_op(std::string op, ValuePtr arg, std::string resVar, CompPtr cont, Span sp = {});
CompPtr c_delay(Grade g, CompPtr body, Span sp = {});
CompPtr c_handle(CompPtr body, HandlerClauses clauses, std::string var, CompPtr cont, Span sp = {});
CompPtr c_unbox(Grade g, ValuePtr boxed, std::string var, CompPtr body, Span sp = {});

// Globally fresh binder names. The parser's alpha-normalization pass and
// substitution's binder refreshing both draw from here.
std::string fresh_name(const std::string& base);

// Alpha-equivalence: equal up to consistent renaming of bound variables.
// Free variables and grades are rigid.
bool alpha_eq(const ValuePtr& a, const ValuePtr& b);
bool alpha_eq(const CompPtr& a, const CompPtr& b);

// Copy a term, renaming every binder to a globally fresh name. Used when a
// value is substituted into several positions.
ValuePtr freshen(const ValuePtr& v);
CompPtr freshen(const CompPtr& m);

// Free variables (in first-use order).
std::vector<std::string> free_vars(const CompPtr& m);

} // namespace ltau
