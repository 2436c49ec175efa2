#include "ltau/renaming.hpp"

#include <set>

namespace ltau {

namespace {

[[noreturn]] void side_condition(const std::string& msg) {
  throw TypeError({"Structural", "side condition violated: " + msg, {}, "", ""});
}

RenPtr make(Renaming&& r) { return std::make_shared<const Renaming>(std::move(r)); }

} // namespace

// Renaming needs a public-ish constructor for make_shared; keep it private
// and befriend nothing — factories allocate directly.
RenPtr Renaming::id(Context g) {
  Renaming r(Kind::Id, g, g);
  return RenPtr(new Renaming(std::move(r)));
}

RenPtr Renaming::compose(RenPtr outer, RenPtr inner) {
  if (inner->target() != outer->source())
    throw internal("compose: inner target and outer source differ:\n  " + inner->target().str() +
                   "\n  " + outer->source().str());
  Renaming r(Kind::Compose, inner->source(), outer->target());
  r.r1_ = std::move(outer);
  r.r2_ = std::move(inner);
  return RenPtr(new Renaming(std::move(r)));
}

RenPtr Renaming::wk(const Context& g, std::string x, ValueType ty) {
  if (g.binds(x)) side_condition("wk: variable " + x + " already bound");
  Renaming r(Kind::Wk, g, g.extend_var(x, ty));
  r.a_ = std::move(x);
  r.ty_ = std::move(ty);
  return RenPtr(new Renaming(std::move(r)));
}

RenPtr Renaming::var(const Context& g, std::string existing, std::string fresh) {
  auto found = var_lookup(g, existing);
  if (!found) side_condition("var: no binding " + existing + " in target context");
  if (g.binds(fresh)) side_condition("var: variable " + fresh + " already bound");
  Renaming r(Kind::Var, g.extend_var(fresh, found->type), g);
  r.a_ = std::move(existing);
  r.b_ = std::move(fresh);
  return RenPtr(new Renaming(std::move(r)));
}

RenPtr Renaming::eta(const Context& g) {
  Renaming r(Kind::Eta, g.extend_mod(Grade::zero()), g);
  return RenPtr(new Renaming(std::move(r)));
}

RenPtr Renaming::eta_inv(const Context& g) {
  Renaming r(Kind::EtaInv, g, g.extend_mod(Grade::zero()));
  return RenPtr(new Renaming(std::move(r)));
}

RenPtr Renaming::mu(const Context& g, Grade t1, Grade t2) {
  Renaming r(Kind::Mu, g.extend_mod(t1 + t2), g.extend_mod(t1).extend_mod(t2));
  r.t1_ = t1;
  r.t2_ = t2;
  return RenPtr(new Renaming(std::move(r)));
}

RenPtr Renaming::mu_inv(const Context& g, Grade t1, Grade t2) {
  Renaming r(Kind::MuInv, g.extend_mod(t1).extend_mod(t2), g.extend_mod(t1 + t2));
  r.t1_ = t1;
  r.t2_ = t2;
  return RenPtr(new Renaming(std::move(r)));
}

RenPtr Renaming::mon(const Context& g, Grade from, Grade to) {
  if (grade_leq(from, to) != Cmp::Yes)
    side_condition("mon requires " + from.str() + " <= " + to.str());
  Renaming r(Kind::Mon, g.extend_mod(from), g.extend_mod(to));
  r.t1_ = from;
  r.t2_ = to;
  return RenPtr(new Renaming(std::move(r)));
}

RenPtr Renaming::cong_var(RenPtr inner, std::string x, ValueType ty) {
  if (inner->source().binds(x) || inner->target().binds(x))
    side_condition("cong-var: variable " + x + " already bound");
  Renaming r(Kind::CongVar, inner->source().extend_var(x, ty), inner->target().extend_var(x, ty));
  r.r1_ = std::move(inner);
  r.a_ = std::move(x);
  r.ty_ = std::move(ty);
  return RenPtr(new Renaming(std::move(r)));
}

RenPtr Renaming::cong_mod(RenPtr inner, Grade t) {
  Renaming r(Kind::CongMod, inner->source().extend_mod(t), inner->target().extend_mod(t));
  r.r1_ = std::move(inner);
  r.t1_ = t;
  return RenPtr(new Renaming(std::move(r)));
}

std::string Renaming::resolve(const std::string& x) const {
  switch (kind_) {
    case Kind::Id:
    case Kind::Wk:
    case Kind::Eta:
    case Kind::EtaInv:
    case Kind::Mu:
    case Kind::MuInv:
    case Kind::Mon:
      return x;
    case Kind::Compose:
      return r1_->resolve(r2_->resolve(x));
    case Kind::Var:
      return x == b_ ? a_ : x;
    case Kind::CongVar:
      return x == a_ ? x : r1_->resolve(x);
    case Kind::CongMod:
      return r1_->resolve(x);
  }
  throw internal("resolve: bad kind");
}

// ---- derived renamings ----

namespace {

// Wrap a renaming with congruences for a trailing context segment.
RenPtr wrap_suffix(RenPtr base, const std::vector<CtxEntry>& entries, std::size_t from) {
  RenPtr r = std::move(base);
  for (std::size_t i = from; i < entries.size(); ++i) {
    if (auto* v = std::get_if<VarBind>(&entries[i]))
      r = Renaming::cong_var(std::move(r), v->name, v->type);
    else
      r = Renaming::cong_mod(std::move(r), std::get<Mod>(entries[i]).grade);
  }
  return r;
}

Context prefix_of(const Context& g, std::size_t upto) {
  return Context(std::vector<CtxEntry>(g.entries().begin(),
                                       g.entries().begin() + static_cast<long>(upto)));
}

} // namespace

RenPtr derived_structural(const Context& g, StructuralRule rule, const StructuralArgs& args) {
  const auto& es = g.entries();
  auto need = [&](bool ok, const char* msg) {
    if (!ok) side_condition(msg);
  };
  switch (rule) {
    case StructuralRule::WeakenCtx: {
      need(args.at <= es.size(), "weaken: position out of range");
      std::string x = g.binds(args.var) ? fresh_name(args.var) : args.var;
      RenPtr base = Renaming::wk(prefix_of(g, args.at), x, args.type);
      return wrap_suffix(std::move(base), es, args.at);
    }
    case StructuralRule::ExchangeVars: {
      need(args.at + 1 < es.size(), "exchange: position out of range");
      auto* x = std::get_if<VarBind>(&es[args.at]);
      auto* y = std::get_if<VarBind>(&es[args.at + 1]);
      need(x && y, "exchange: both entries must be variables");
      Context gp = prefix_of(g, args.at);
      std::string y1 = fresh_name(y->name);
      // Gp, x, y ~> Gp, y1, x, y ~> Gp, y1, x   (y contracted into y1)
      RenPtr ins = Renaming::cong_var(
          Renaming::cong_var(Renaming::wk(gp, y1, y->type), x->name, x->type), y->name, y->type);
      RenPtr con = Renaming::var(gp.extend_var(y1, y->type).extend_var(x->name, x->type), y1,
                                 y->name);
      return wrap_suffix(Renaming::compose(std::move(con), std::move(ins)), es, args.at + 2);
    }
    case StructuralRule::ExchangeVarMod: {
      need(args.at + 1 < es.size(), "exchange: position out of range");
      auto* m = std::get_if<Mod>(&es[args.at]);
      auto* x = std::get_if<VarBind>(&es[args.at + 1]);
      need(m && x, "exchange: expected a modality followed by a variable");
      Context gp = prefix_of(g, args.at);
      std::string x1 = fresh_name(x->name);
      // Gp, <t>, x ~> Gp, x1, <t>, x ~> Gp, x1, <t>
      RenPtr ins = Renaming::cong_var(
          Renaming::cong_mod(Renaming::wk(gp, x1, x->type), m->grade), x->name, x->type);
      RenPtr con =
          Renaming::var(gp.extend_var(x1, x->type).extend_mod(m->grade), x1, x->name);
      return wrap_suffix(Renaming::compose(std::move(con), std::move(ins)), es, args.at + 2);
    }
    case StructuralRule::Contract: {
      need(args.at < es.size(), "contract: position out of range");
      auto* y = std::get_if<VarBind>(&es[args.at]);
      need(y != nullptr, "contract: entry is not a variable");
      Context gp = prefix_of(g, args.at);
      auto existing = var_lookup(gp, args.var);
      need(existing.has_value(), "contract: surviving variable not in scope");
      need(existing->type == y->type, "contract: variable types differ");
      RenPtr base = Renaming::var(gp, args.var, y->name);
      return wrap_suffix(std::move(base), es, args.at + 1);
    }
    case StructuralRule::SplitMod: {
      need(args.at < es.size(), "split: position out of range");
      auto* m = std::get_if<Mod>(&es[args.at]);
      need(m != nullptr, "split: entry is not a modality");
      need(m->grade == args.t1 + args.t2, "split: grades do not sum to the modality");
      RenPtr base = Renaming::mu(prefix_of(g, args.at), args.t1, args.t2);
      return wrap_suffix(std::move(base), es, args.at + 1);
    }
    case StructuralRule::JoinMod: {
      need(args.at + 1 < es.size(), "join: position out of range");
      auto* m1 = std::get_if<Mod>(&es[args.at]);
      auto* m2 = std::get_if<Mod>(&es[args.at + 1]);
      need(m1 && m2, "join: expected two adjacent modalities");
      RenPtr base = Renaming::mu_inv(prefix_of(g, args.at), m1->grade, m2->grade);
      return wrap_suffix(std::move(base), es, args.at + 2);
    }
    case StructuralRule::GrowMod: {
      need(args.at < es.size(), "grow: position out of range");
      auto* m = std::get_if<Mod>(&es[args.at]);
      need(m != nullptr, "grow: entry is not a modality");
      RenPtr base = Renaming::mon(prefix_of(g, args.at), m->grade, args.t2);
      return wrap_suffix(std::move(base), es, args.at + 1);
    }
    case StructuralRule::DropZeroMod: {
      need(args.at < es.size(), "drop-zero: position out of range");
      auto* m = std::get_if<Mod>(&es[args.at]);
      need(m && m->grade.is_zero(), "drop-zero: entry is not a <0> modality");
      RenPtr base = Renaming::eta(prefix_of(g, args.at));
      return wrap_suffix(std::move(base), es, args.at + 1);
    }
    case StructuralRule::AddZeroMod: {
      need(args.at <= es.size(), "add-zero: position out of range");
      RenPtr base = Renaming::eta_inv(prefix_of(g, args.at));
      return wrap_suffix(std::move(base), es, args.at);
    }
  }
  throw internal("derived_structural: bad rule");
}

RenPtr drop_minus(const Context& g, const Grade& tau) {
  if (tau.as_nat() == 0) return Renaming::id(g);
  if (g.empty()) return Renaming::id(g);
  const auto& es = g.entries();
  Context g0 = prefix_of(g, es.size() - 1);
  if (auto* v = std::get_if<VarBind>(&es.back()))
    return Renaming::compose(Renaming::wk(g0, v->name, v->type), drop_minus(g0, tau));
  const Grade& m = std::get<Mod>(es.back()).grade;
  switch (grade_leq(tau, m)) {
    case Cmp::Yes:
      return Renaming::mon(g0, grade_monus_or_throw(m, tau, "Renaming"), m);
    case Cmp::No: {
      Grade rest = grade_monus_or_throw(tau, m, "Renaming");
      RenPtr up = Renaming::compose(Renaming::mon(g0, Grade::zero(), m), Renaming::eta_inv(g0));
      return Renaming::compose(std::move(up), drop_minus(g0, rest));
    }
    case Cmp::Unknown:
      throw SymbolicUnderflow({"Renaming", "cannot compare " + tau.str() + " with symbolic " +
                                                m.str() + " while truncating a renaming", {}, "", ""});
  }
  throw internal("drop_minus: bad comparison");
}

RenPtr pra_counit(const Context& g, const Grade& tau) {
  if (grade_leq(tau, ctx_time(g)) != Cmp::Yes)
    side_condition("pra-counit requires tau <= time of context");
  if (tau.as_nat() == 0) return Renaming::eta(g);
  const auto& es = g.entries();
  if (es.empty()) throw internal("pra_counit: empty context with positive time");
  Context g0 = prefix_of(g, es.size() - 1);
  if (auto* v = std::get_if<VarBind>(&es.back()))
    return Renaming::compose(Renaming::wk(g0, v->name, v->type), pra_counit(g0, tau));
  const Grade& m = std::get<Mod>(es.back()).grade;
  switch (grade_leq(tau, m)) {
    case Cmp::Yes: {
      Grade left = grade_monus_or_throw(m, tau, "Renaming");
      return Renaming::mu_inv(g0, left, tau);
    }
    case Cmp::No: {
      Grade rest = grade_monus_or_throw(tau, m, "Renaming");
      Context gm = ctx_minus(g0, rest);
      RenPtr split = Renaming::mu(gm, rest, m);
      RenPtr rec = Renaming::cong_mod(pra_counit(g0, rest), m);
      return Renaming::compose(std::move(rec), std::move(split));
    }
    case Cmp::Unknown:
      throw SymbolicUnderflow({"Renaming", "pra-counit: symbolic modality " + m.str(), {}, "", ""});
  }
  throw internal("pra_counit: bad comparison");
}

RenPtr pra_unit(const Context& g, const Grade& tau) {
  (void)tau;
  return Renaming::eta_inv(g);
}

// ---- action on terms ----

namespace {

struct Apply {
  const Renaming& rho;
  std::set<std::string> bound;

  ValuePtr value(const ValuePtr& v) {
    if (auto* x = std::get_if<VVar>(&v->v)) {
      if (bound.count(x->name)) return v;
      std::string mapped = rho.resolve(x->name);
      if (!rho.target().binds(mapped))
        throw internal("renaming maps used variable " + x->name + " outside the target context");
      return mapped == x->name ? v : v_var(mapped, v->span);
    }
    if (auto* x = std::get_if<VConst>(&v->v)) {
      std::vector<ValuePtr> args;
      for (const auto& a : x->args) args.push_back(value(a));
      return v_const(x->name, std::move(args), v->span);
    }
    if (std::holds_alternative<VUnit>(v->v)) return v;
    if (auto* x = std::get_if<VPair>(&v->v)) return v_pair(value(x->fst), value(x->snd), v->span);
    if (auto* x = std::get_if<VFun>(&v->v)) {
      bound.insert(x->param);
      auto body = comp(x->body);
      bound.erase(x->param);
      return v_fun(x->param, x->paramType, body, v->span);
    }
    const auto& x = std::get<VBox>(v->v);
    return v_box(x.grade, value(x.payload), v->span);
  }

  CompPtr comp(const CompPtr& m) {
    CompPtr out;
    if (auto* x = std::get_if<CReturn>(&m->v)) {
      out = c_return(value(x->val), m->span);
    } else if (auto* x = std::get_if<CLet>(&m->v)) {
      auto b = comp(x->bound);
      bound.insert(x->var);
      auto body = comp(x->body);
      bound.erase(x->var);
      out = c_let(x->var, b, body, m->span);
    } else if (auto* x = std::get_if<CApply>(&m->v)) {
      out = c_apply(value(x->fn), value(x->arg), m->span);
    } else if (auto* x = std::get_if<CMatch>(&m->v)) {
      auto s = value(x->scrut);
      bound.insert(x->fst);
      bound.insert(x->snd);
      auto body = comp(x->body);
      bound.erase(x->fst);
      bound.erase(x->snd);
      out = c_match(s, x->fst, x->snd, body, m->span);
    } else if (auto* x = std::get_if<COp>(&m->v)) {
      auto a = value(x->arg);
      bound.insert(x->resVar);
      auto cont = comp(x->cont);
      bound.erase(x->resVar);
      out = c_op(x->op, a, x->resVar, cont, m->span);
    } else if (auto* x = std::get_if<CDelay>(&m->v)) {
      out = c_delay(x->grade, comp(x->body), m->span);
    } else if (auto* x = std::get_if<CHandle>(&m->v)) {
      auto b = comp(x->body);
      HandlerClauses clauses;
      for (const auto& [op, cl] : x->clauses) {
        bound.insert(cl.param);
        bound.insert(cl.cont);
        clauses.emplace(op, HandlerClause{cl.param, cl.cont, comp(cl.body)});
        bound.erase(cl.param);
        bound.erase(cl.cont);
      }
      bound.insert(x->var);
      auto cont = comp(x->cont);
      bound.erase(x->var);
      out = c_handle(b, std::move(clauses), x->var, cont, m->span);
    } else {
      const auto& u = std::get<CUnbox>(m->v);
      auto bx = value(u.boxed);
      bound.insert(u.var);
      auto body = comp(u.body);
      bound.erase(u.var);
      out = c_unbox(u.grade, bx, u.var, body, m->span);
    }
    out->boundGrade = m->boundGrade;
    return out;
  }
};

} // namespace

ValuePtr apply_renaming(const RenPtr& rho, const ValuePtr& v) {
  Apply a{*rho, {}};
  return a.value(v);
}

CompPtr apply_renaming(const RenPtr& rho, const CompPtr& m) {
  Apply a{*rho, {}};
  return a.comp(m);
}

// ---- rho - tau ----

RenPtr renaming_minus(const RenPtr& rho, const Grade& tau) {
  std::uint64_t t = tau.as_nat();
  if (t == 0) return rho;
  switch (rho->kind()) {
    case Renaming::Kind::Id:
      return Renaming::id(ctx_minus(rho->source(), tau));
    case Renaming::Kind::Compose:
      return Renaming::compose(renaming_minus(rho->first(), tau),
                               renaming_minus(rho->second(), tau));
    case Renaming::Kind::Wk:
    case Renaming::Kind::Var:
    case Renaming::Kind::Eta:
    case Renaming::Kind::EtaInv: {
      // the affected trailing entry is erased by minus on both sides
      Context src = ctx_minus(rho->source(), tau);
      Context tgt = ctx_minus(rho->target(), tau);
      if (src != tgt) throw internal("renaming_minus: unexpected shape mismatch");
      return Renaming::id(std::move(src));
    }
    case Renaming::Kind::Mu: {
      const Context g = prefix_of(rho->source(), rho->source().size() - 1);
      const Grade &t1 = rho->grade_a(), &t2 = rho->grade_b();
      if (grade_leq(tau, t2) == Cmp::Yes)
        return Renaming::mu(g, t1, grade_monus_or_throw(t2, tau, "Renaming"));
      Context src = ctx_minus(rho->source(), tau);
      Context tgt = ctx_minus(rho->target(), tau);
      if (src != tgt) throw internal("renaming_minus(mu): shape mismatch");
      return Renaming::id(std::move(src));
    }
    case Renaming::Kind::MuInv: {
      const Context g = prefix_of(rho->target(), rho->target().size() - 1);
      const Grade &t1 = rho->grade_a(), &t2 = rho->grade_b();
      if (grade_leq(tau, t2) == Cmp::Yes)
        return Renaming::mu_inv(g, t1, grade_monus_or_throw(t2, tau, "Renaming"));
      Context src = ctx_minus(rho->source(), tau);
      Context tgt = ctx_minus(rho->target(), tau);
      if (src != tgt) throw internal("renaming_minus(mu-inv): shape mismatch");
      return Renaming::id(std::move(src));
    }
    case Renaming::Kind::Mon: {
      const Context g = prefix_of(rho->source(), rho->source().size() - 1);
      const Grade &from = rho->grade_a(), &to = rho->grade_b();
      if (grade_leq(tau, from) == Cmp::Yes)
        return Renaming::mon(g, grade_monus_or_throw(from, tau, "Renaming"),
                             grade_monus_or_throw(to, tau, "Renaming"));
      Grade past = grade_monus_or_throw(tau, from, "Renaming");
      if (grade_leq(tau, to) == Cmp::Yes) {
        // G - (tau - from)  ~>  G  ~>  G, <0>  ~>  G, <to - tau>
        Grade left = grade_monus_or_throw(to, tau, "Renaming");
        RenPtr up = Renaming::compose(Renaming::mon(g, Grade::zero(), left), Renaming::eta_inv(g));
        return Renaming::compose(std::move(up), drop_minus(g, past));
      }
      // both modalities consumed: G - (tau - from) ~> G - (tau - to)
      Grade past2 = grade_monus_or_throw(tau, to, "Renaming");
      Context gsmall = ctx_minus(g, past2);
      return drop_minus(gsmall, grade_monus_or_throw(past, past2, "Renaming"));
    }
    case Renaming::Kind::CongVar:
      return renaming_minus(rho->first(), tau);
    case Renaming::Kind::CongMod: {
      const Grade& m = rho->grade_a();
      if (grade_leq(tau, m) == Cmp::Yes)
        return Renaming::cong_mod(rho->first(), grade_monus_or_throw(m, tau, "Renaming"));
      return renaming_minus(rho->first(), grade_monus_or_throw(tau, m, "Renaming"));
    }
  }
  throw internal("renaming_minus: bad kind");
}

} // namespace ltau
