#include "ltau/typecheck.hpp"

namespace ltau {

void Checker::fail(const char* rule, const std::string& msg, Span sp, const std::string& expected,
                   const std::string& actual) {
  throw TypeError({rule, msg, sp, expected, actual});
}

ValueType Checker::infer_value(const Context& ctx, const ValuePtr& v) {
  ValueType result = [&]() -> ValueType {
    if (auto* x = std::get_if<VVar>(&v->v)) {
      auto found = var_lookup(ctx, x->name);
      if (!found) fail("Var", "unbound variable " + x->name, v->span);
      return found->type;
    }
    if (auto* x = std::get_if<VConst>(&v->v)) {
      const ConstSig* c = sig_.find_const(x->name);
      if (!c) {
        // carrier elements are nullary constants of their base type
        if (const BaseDecl* b = sig_.base_of_elem(x->name); b && x->args.empty())
          return ValueType::base(b->name);
        fail("Const", "unknown constant " + x->name, v->span);
      }
      if (c->params.size() != x->args.size())
        fail("Const", "arity mismatch for constant " + x->name, v->span,
             std::to_string(c->params.size()) + " arguments",
             std::to_string(x->args.size()) + " arguments");
      for (std::size_t i = 0; i < x->args.size(); ++i) {
        ValueType got = infer_value(ctx, x->args[i]);
        ValueType want = embed(c->params[i]);
        if (got != want)
          fail("Const", "argument " + std::to_string(i + 1) + " of " + x->name, x->args[i]->span,
               want.str(), got.str());
      }
      return embed(c->result);
    }
    if (std::holds_alternative<VUnit>(v->v)) return ValueType::unit();
    if (auto* x = std::get_if<VPair>(&v->v))
      return ValueType::prod(infer_value(ctx, x->fst), infer_value(ctx, x->snd));
    if (auto* x = std::get_if<VFun>(&v->v)) {
      CompType body = infer_comp(ctx.extend_var(x->param, x->paramType), x->body);
      return ValueType::fun(x->paramType, body);
    }
    // Box: G, <tau> |- V : X  =>  G |- box_tau V : [tau] X
    const auto& x = std::get<VBox>(v->v);
    ValueType inner = infer_value(ctx.extend_mod(x.grade), x.payload);
    return ValueType::boxed(x.grade, inner);
  }();
  v->annType = result;
  return result;
}

CompType Checker::infer_comp(const Context& ctx, const CompPtr& m) {
  CompType result = [&]() -> CompType {
    if (auto* x = std::get_if<CReturn>(&m->v)) {
      // returning a value takes zero time
      return CompType{infer_value(ctx, x->val), Grade::zero()};
    }
    if (auto* x = std::get_if<CLet>(&m->v)) {
      CompType bound = infer_comp(ctx, x->bound);
      m->boundGrade = bound.grade;
      Context inner = ctx.extend_mod(bound.grade).extend_var(x->var, bound.ret);
      CompType body = infer_comp(inner, x->body);
      return CompType{body.ret, bound.grade + body.grade};
    }
    if (auto* x = std::get_if<CApply>(&m->v)) {
      ValueType fn = infer_value(ctx, x->fn);
      auto* f = fn.get<ValueType::Fun>();
      if (!f) fail("Apply", "application of a non-function", m->span, "function type", fn.str());
      ValueType arg = infer_value(ctx, x->arg);
      if (arg != f->arg) fail("Apply", "argument type mismatch", x->arg->span, f->arg.str(), arg.str());
      return f->result;
    }
    if (auto* x = std::get_if<CMatch>(&m->v)) {
      ValueType scrut = infer_value(ctx, x->scrut);
      auto* p = scrut.get<ValueType::Prod>();
      if (!p) fail("Match", "match on a non-pair", x->scrut->span, "product type", scrut.str());
      Context inner = ctx.extend_var(x->fst, p->fst).extend_var(x->snd, p->snd);
      return infer_comp(inner, x->body);
    }
    if (auto* x = std::get_if<COp>(&m->v)) {
      const OpSignature* op = sig_.find_op(x->op);
      if (!op) fail("Op", "unknown operation " + x->op, m->span);
      ValueType arg = infer_value(ctx, x->arg);
      ValueType want = embed(op->param);
      if (arg != want) fail("Op", "operation argument mismatch for " + x->op, x->arg->span,
                            want.str(), arg.str());
      Context inner = ctx.extend_mod(op->duration).extend_var(x->resVar, embed(op->result));
      CompType cont = infer_comp(inner, x->cont);
      return CompType{cont.ret, op->duration + cont.grade};
    }
    if (auto* x = std::get_if<CDelay>(&m->v)) {
      CompType body = infer_comp(ctx.extend_mod(x->grade), x->body);
      return CompType{body.ret, x->grade + body.grade};
    }
    if (auto* x = std::get_if<CHandle>(&m->v)) {
      CompType bound = infer_comp(ctx, x->body);
      m->boundGrade = bound.grade;
      Context inner = ctx.extend_mod(bound.grade).extend_var(x->var, bound.ret);
      CompType cont = infer_comp(inner, x->cont);
      check_handler(ctx, x->clauses, cont.ret, m->span);
      return CompType{cont.ret, bound.grade + cont.grade};
    }
    // Unbox: tau <= time G, and V is typed in the earlier context G - tau.
    const auto& x = std::get<CUnbox>(m->v);
    ValueType boxed = [&] {
      if (skipTemporal_) return infer_value(ctx, x.boxed);
      Grade avail = ctx_time(ctx);
      switch (grade_leq(x.grade, avail)) {
        case Cmp::Yes: break;
        case Cmp::No:
          fail("Unbox", "temporal violation: unboxing needs " + x.grade.str() +
                            " time units but the context provides " + avail.str(),
               m->span, x.grade.str() + " <= time of context", avail.str());
        case Cmp::Unknown:
          fail("Unbox", "cannot decide " + x.grade.str() + " <= " + avail.str() +
                            " (symbolic context time); rejected as potentially unsafe",
               m->span);
      }
      return infer_value(ctx_minus(ctx, x.grade), x.boxed);
    }();
    auto* b = boxed.get<ValueType::Boxed>();
    if (!b) fail("Unbox", "unboxing a non-resource", x.boxed->span, "[" + x.grade.str() + "] _",
                 boxed.str());
    if (b->grade != x.grade)
      fail("Unbox", "resource grade mismatch", x.boxed->span, "[" + x.grade.str() + "] _",
           boxed.str());
    Context inner = ctx.extend_var(x.var, b->inner);
    return infer_comp(inner, x.body);
  }();
  m->annType = result;
  m->annCtx = ctx;
  return result;
}

std::vector<Checker::ClauseTyping> Checker::check_handler(const Context& ctx,
                                                          const HandlerClauses& clauses,
                                                          const ValueType& result, Span sp) {
  // handlers must supply a clause for every declared operation
  for (const auto& op : sig_.ops())
    if (!clauses.count(op.name))
      fail("Handle", "missing clause for operation " + op.name, sp);
  for (const auto& [name, cl] : clauses)
    if (!sig_.find_op(name)) fail("Handle", "clause for unknown operation " + name, sp);

  std::vector<ClauseTyping> out;
  for (const auto& [name, cl] : clauses) {
    const OpSignature& op = *sig_.find_op(name);
    // forall tau''. G, x:A_op, k:[tau_op](B_op -> Y!tau'') |- M_op : Y!(tau_op + tau'')
    Grade rigid = Grade::rigid_var(nextRigid_++);
    ValueType contTy =
        ValueType::boxed(op.duration, ValueType::fun(embed(op.result), CompType{result, rigid}));
    Context inner = ctx.extend_var(cl.param, embed(op.param)).extend_var(cl.cont, contTy);
    CompType body = infer_comp(inner, cl.body);
    Grade want = op.duration + rigid;
    if (body.ret != result)
      fail("Handle", "clause for " + name + " returns the wrong type", cl.body->span,
           result.str(), body.ret.str());
    if (body.grade != want)
      fail("Handle", "clause for " + name + " has the wrong grade (the continuation must run "
                     "exactly once, after exactly " + op.duration.str() + " time units)",
           cl.body->span, want.str(), body.grade.str());
    out.push_back(ClauseTyping{name, rigid, body});
  }
  return out;
}

CompType Checker::elaborate(const CompPtr& m, const Context& ctx) {
  return infer_comp(ctx, m);
}

} // namespace ltau
