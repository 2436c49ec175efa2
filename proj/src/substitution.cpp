#include "ltau/substitution.hpp"

namespace ltau {

namespace {

Grade bound_grade_of(const CompPtr& m) {
  if (!m->boundGrade)
    throw internal("substitution requires elaborated terms (missing bound grade)");
  return *m->boundGrade;
}

} // namespace

ValuePtr subst(const ValuePtr& v, const ValuePtr& w, const std::string& x,
               const SignatureTable& sig, Grade elapsed) {
  if (auto* n = std::get_if<VVar>(&v->v)) return n->name == x ? freshen(w) : v;
  if (auto* n = std::get_if<VConst>(&v->v)) {
    std::vector<ValuePtr> args;
    for (const auto& a : n->args) args.push_back(subst(a, w, x, sig, elapsed));
    return v_const(n->name, std::move(args), v->span);
  }
  if (std::holds_alternative<VUnit>(v->v)) return v;
  if (auto* n = std::get_if<VPair>(&v->v))
    return v_pair(subst(n->fst, w, x, sig, elapsed), subst(n->snd, w, x, sig, elapsed), v->span);
  if (auto* n = std::get_if<VFun>(&v->v))
    return v_fun(n->param, n->paramType, subst(n->body, w, x, sig, elapsed), v->span);
  const auto& n = std::get<VBox>(v->v);
  return v_box(n.grade, subst(n.payload, w, x, sig, elapsed + n.grade), v->span);
}

CompPtr subst(const CompPtr& m, const ValuePtr& w, const std::string& x,
              const SignatureTable& sig, Grade elapsed) {
  CompPtr out;
  if (auto* n = std::get_if<CReturn>(&m->v)) {
    out = c_return(subst(n->val, w, x, sig, elapsed), m->span);
  } else if (auto* n = std::get_if<CLet>(&m->v)) {
    Grade g = bound_grade_of(m);
    out = c_let(n->var, subst(n->bound, w, x, sig, elapsed),
                subst(n->body, w, x, sig, elapsed + g), m->span);
  } else if (auto* n = std::get_if<CApply>(&m->v)) {
    out = c_apply(subst(n->fn, w, x, sig, elapsed), subst(n->arg, w, x, sig, elapsed), m->span);
  } else if (auto* n = std::get_if<CMatch>(&m->v)) {
    out = c_match(subst(n->scrut, w, x, sig, elapsed), n->fst, n->snd,
                  subst(n->body, w, x, sig, elapsed), m->span);
  } else if (auto* n = std::get_if<COp>(&m->v)) {
    const OpSignature* op = sig.find_op(n->op);
    if (!op) throw internal("subst: unknown operation " + n->op);
    out = c_op(n->op, subst(n->arg, w, x, sig, elapsed), n->resVar,
               subst(n->cont, w, x, sig, elapsed + op->duration), m->span);
  } else if (auto* n = std::get_if<CDelay>(&m->v)) {
    out = c_delay(n->grade, subst(n->body, w, x, sig, elapsed + n->grade), m->span);
  } else if (auto* n = std::get_if<CHandle>(&m->v)) {
    Grade g = bound_grade_of(m);
    HandlerClauses clauses;
    for (const auto& [op, cl] : n->clauses)
      clauses.emplace(op, HandlerClause{cl.param, cl.cont, subst(cl.body, w, x, sig, elapsed)});
    out = c_handle(subst(n->body, w, x, sig, elapsed), std::move(clauses), n->var,
                   subst(n->cont, w, x, sig, elapsed + g), m->span);
  } else {
    const auto& u = std::get<CUnbox>(m->v);
    // Whether x survives the time travel to (G, x:X, G') - tau decides
    // whether W reaches the boxed value.
    ValuePtr boxed = u.boxed;
    switch (grade_leq(u.grade, elapsed)) {
      case Cmp::Yes: {
        Grade inner = grade_monus_or_throw(elapsed, u.grade, "Subst");
        boxed = subst(u.boxed, w, x, sig, inner);
        break;
      }
      case Cmp::No:
        break; // x is dropped; V[W/x] = V
      case Cmp::Unknown:
        throw SymbolicUnderflow({"Subst",
                                 "cannot decide whether " + x + " survives unbox@" +
                                     u.grade.str() + " under elapsed time " + elapsed.str(),
                                 m->span, "", ""});
    }
    out = c_unbox(u.grade, boxed, u.var, subst(u.body, w, x, sig, elapsed), m->span);
  }
  out->boundGrade = m->boundGrade;
  return out;
}

} // namespace ltau
