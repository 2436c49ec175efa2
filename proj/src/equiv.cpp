#include "ltau/equiv.hpp"

#include "ltau/substitution.hpp"

namespace ltau {

namespace {

Grade minus_or_bug(const Grade& a, const Grade& b) {
  return grade_monus_or_throw(a, b, "Normalize");
}

// One top-level rewrite, or null when the root is not a redex.
CompPtr top_step(const CompPtr& m, const SignatureTable& sig) {
  if (auto* app = std::get_if<CApply>(&m->v)) {
    if (auto* fn = std::get_if<VFun>(&app->fn->v))
      return subst(fn->body, app->arg, fn->param, sig);
    return nullptr;
  }
  if (auto* mt = std::get_if<CMatch>(&m->v)) {
    if (auto* p = std::get_if<VPair>(&mt->scrut->v))
      return subst(subst(mt->body, p->fst, mt->fst, sig), p->snd, mt->snd, sig);
    return nullptr;
  }
  if (auto* let = std::get_if<CLet>(&m->v)) {
    const CompPtr& bound = let->bound;
    if (auto* r = std::get_if<CReturn>(&bound->v)) return subst(let->body, r->val, let->var, sig);
    if (auto* innerLet = std::get_if<CLet>(&bound->v)) {
      // let y = (let x = M in N) in P  =>  let x = M in (let y = N in P)
      // grade(N) = grade(M; N) - grade(M)
      CompPtr newInner = c_let(let->var, innerLet->body, let->body, m->span);
      newInner->boundGrade = minus_or_bug(m->boundGrade.value(), bound->boundGrade.value());
      CompPtr out = c_let(innerLet->var, innerLet->bound, newInner, m->span);
      out->boundGrade = bound->boundGrade;
      return out;
    }
    if (auto* op = std::get_if<COp>(&bound->v)) {
      // let x = (op V (y. M)) in N  =>  op V (y. let x = M in N)
      CompPtr newLet = c_let(let->var, op->cont, let->body, m->span);
      newLet->boundGrade = minus_or_bug(m->boundGrade.value(), sig.find_op(op->op)->duration);
      return c_op(op->op, op->arg, op->resVar, newLet, m->span);
    }
    if (auto* d = std::get_if<CDelay>(&bound->v)) {
      // let x = (delay t M) in N  =>  delay t (let x = M in N)
      CompPtr newLet = c_let(let->var, d->body, let->body, m->span);
      newLet->boundGrade = minus_or_bug(m->boundGrade.value(), d->grade);
      return c_delay(d->grade, newLet, m->span);
    }
    return nullptr;
  }
  if (auto* h = std::get_if<CHandle>(&m->v)) {
    const CompPtr& bound = h->body;
    if (auto* r = std::get_if<CReturn>(&bound->v)) return subst(h->cont, r->val, h->var, sig);
    if (auto* op = std::get_if<COp>(&bound->v)) {
      // handle (op V (y. M)) with H to x in N
      //   =>  M_op[V/x_op, box_{t_op}(fun y -> handle M with H to x in N)/k_op]
      const OpSignature* decl = sig.find_op(op->op);
      auto it = h->clauses.find(op->op);
      if (it == h->clauses.end()) throw internal("normalize: missing clause for " + op->op);
      CompPtr rest = c_handle(op->cont, h->clauses, h->var, h->cont, m->span);
      rest->boundGrade = minus_or_bug(m->boundGrade.value(), decl->duration);
      ValuePtr resume = v_box(
          decl->duration, v_fun(op->resVar, embed(decl->result), rest, m->span), m->span);
      CompPtr body = subst(it->second.body, op->arg, it->second.param, sig);
      return subst(body, resume, it->second.cont, sig);
    }
    if (auto* d = std::get_if<CDelay>(&bound->v)) {
      // handle (delay t M) with H to x in N  =>  delay t (handle M with H to x in N)
      CompPtr rest = c_handle(d->body, h->clauses, h->var, h->cont, m->span);
      rest->boundGrade = minus_or_bug(m->boundGrade.value(), d->grade);
      return c_delay(d->grade, rest, m->span);
    }
    return nullptr;
  }
  if (auto* u = std::get_if<CUnbox>(&m->v)) {
    if (auto* b = std::get_if<VBox>(&u->boxed->v))
      if (b->grade == u->grade) return subst(u->body, b->payload, u->var, sig);
    return nullptr;
  }
  if (auto* d = std::get_if<CDelay>(&m->v)) {
    if (d->grade.is_zero()) return d->body;
    if (auto* dd = std::get_if<CDelay>(&d->body->v))
      return c_delay(d->grade + dd->grade, dd->body, m->span);
    return nullptr;
  }
  return nullptr;
}

ValuePtr norm_value(const ValuePtr& v, const SignatureTable& sig);
CompPtr norm_comp(const CompPtr& m, const SignatureTable& sig);

ValuePtr norm_value(const ValuePtr& v, const SignatureTable& sig) {
  if (auto* x = std::get_if<VConst>(&v->v)) {
    std::vector<ValuePtr> args;
    for (const auto& a : x->args) args.push_back(norm_value(a, sig));
    return v_const(x->name, std::move(args), v->span);
  }
  if (auto* x = std::get_if<VPair>(&v->v))
    return v_pair(norm_value(x->fst, sig), norm_value(x->snd, sig), v->span);
  if (auto* x = std::get_if<VFun>(&v->v))
    return v_fun(x->param, x->paramType, norm_comp(x->body, sig), v->span);
  if (auto* x = std::get_if<VBox>(&v->v))
    return v_box(x->grade, norm_value(x->payload, sig), v->span);
  return v;
}

CompPtr norm_comp(const CompPtr& m, const SignatureTable& sig) {
  // normalize children, try the root, repeat
  CompPtr cur = m;
  for (;;) {
    CompPtr rebuilt;
    if (auto* x = std::get_if<CReturn>(&cur->v)) {
      rebuilt = c_return(norm_value(x->val, sig), cur->span);
    } else if (auto* x = std::get_if<CLet>(&cur->v)) {
      rebuilt = c_let(x->var, norm_comp(x->bound, sig), norm_comp(x->body, sig), cur->span);
    } else if (auto* x = std::get_if<CApply>(&cur->v)) {
      rebuilt = c_apply(norm_value(x->fn, sig), norm_value(x->arg, sig), cur->span);
    } else if (auto* x = std::get_if<CMatch>(&cur->v)) {
      rebuilt = c_match(norm_value(x->scrut, sig), x->fst, x->snd, norm_comp(x->body, sig),
                        cur->span);
    } else if (auto* x = std::get_if<COp>(&cur->v)) {
      rebuilt = c_op(x->op, norm_value(x->arg, sig), x->resVar, norm_comp(x->cont, sig),
                     cur->span);
    } else if (auto* x = std::get_if<CDelay>(&cur->v)) {
      rebuilt = c_delay(x->grade, norm_comp(x->body, sig), cur->span);
    } else if (auto* x = std::get_if<CHandle>(&cur->v)) {
      HandlerClauses clauses;
      for (const auto& [op, cl] : x->clauses)
        clauses.emplace(op, HandlerClause{cl.param, cl.cont, norm_comp(cl.body, sig)});
      rebuilt = c_handle(norm_comp(x->body, sig), std::move(clauses), x->var,
                         norm_comp(x->cont, sig), cur->span);
    } else {
      const auto& u = std::get<CUnbox>(cur->v);
      rebuilt = c_unbox(u.grade, norm_value(u.boxed, sig), u.var, norm_comp(u.body, sig),
                        cur->span);
    }
    rebuilt->boundGrade = cur->boundGrade;
    CompPtr next = top_step(rebuilt, sig);
    if (!next) return rebuilt;
    cur = next;
  }
}

} // namespace

CompPtr normalize(const CompPtr& m, const SignatureTable& sig) { return norm_comp(m, sig); }

Equiv check_equiv(const CompPtr& m, const CompPtr& n, const SignatureTable& sig,
                  const Context& ctx) {
  Checker checker(sig);
  CompType tm = checker.elaborate(m, ctx);
  CompType tn = checker.elaborate(n, ctx);
  if (tm != tn)
    throw TypeError({"Equiv", "terms have different types or grades", m->span, tm.str(),
                     tn.str()});
  return alpha_eq(normalize(m, sig), normalize(n, sig)) ? Equiv::Equal : Equiv::Unknown;
}

} // namespace ltau
