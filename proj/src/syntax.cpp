#include "ltau/syntax.hpp"

#include <atomic>
#include <functional>
#include <set>

namespace ltau {

ValuePtr v_var(std::string name, Span sp) {
  return std::make_shared<ValueNode>(ValueNode{VVar{std::move(name)}, sp, {}});
}
ValuePtr v_const(std::string name, std::vector<ValuePtr> args, Span sp) {
  return std::make_shared<ValueNode>(ValueNode{VConst{std::move(name), std::move(args)}, sp, {}});
}
ValuePtr v_unit(Span sp) {
  return std::make_shared<ValueNode>(ValueNode{VUnit{}, sp, {}});
}
ValuePtr v_pair(ValuePtr a, ValuePtr b, Span sp) {
  return std::make_shared<ValueNode>(ValueNode{VPair{std::move(a), std::move(b)}, sp, {}});
}
ValuePtr v_fun(std::string param, ValueType ty, CompPtr body, Span sp) {
  return std::make_shared<ValueNode>(
      ValueNode{VFun{std::move(param), std::move(ty), std::move(body)}, sp, {}});
}
ValuePtr v_box(Grade g, ValuePtr payload, Span sp) {
  return std::make_shared<ValueNode>(ValueNode{VBox{g, std::move(payload)}, sp, {}});
}

CompPtr c_return(ValuePtr v, Span sp) {
  return std::make_shared<CompNode>(CompNode{CReturn{std::move(v)}, sp, {}, {}, {}});
}
CompPtr c_let(std::string var, CompPtr bound, CompPtr body, Span sp) {
  return std::make_shared<CompNode>(
      CompNode{CLet{std::move(var), std::move(bound), std::move(body)}, sp, {}, {}, {}});
}
CompPtr c_apply(ValuePtr fn, ValuePtr arg, Span sp) {
  return std::make_shared<CompNode>(CompNode{CApply{std::move(fn), std::move(arg)}, sp, {}, {}, {}});
}
CompPtr c_match(ValuePtr scrut, std::string fst, std::string snd, CompPtr body, Span sp) {
  return std::make_shared<CompNode>(
      CompNode{CMatch{std::move(scrut), std::move(fst), std::move(snd), std::move(body)}, sp, {}, {}, {}});
}
CompPtr c_op(std::string op, ValuePtr arg, std::string resVar, CompPtr cont, Span sp) {
  return std::make_shared<CompNode>(
      CompNode{COp{std::move(op), std::move(arg), std::move(resVar), std::move(cont)}, sp, {}, {}, {}});
}
CompPtr c_delay(Grade g, CompPtr body, Span sp) {
  return std::make_shared<CompNode>(CompNode{CDelay{g, std::move(body)}, sp, {}, {}, {}});
}
CompPtr c_handle(CompPtr body, HandlerClauses clauses, std::string var, CompPtr cont, Span sp) {
  return std::make_shared<CompNode>(
      CompNode{CHandle{std::move(body), std::move(clauses), std::move(var), std::move(cont)}, sp,
               {}, {}, {}});
}
CompPtr c_unbox(Grade g, ValuePtr boxed, std::string var, CompPtr body, Span sp) {
  return std::make_shared<CompNode>(
      CompNode{CUnbox{g, std::move(boxed), std::move(var), std::move(body)}, sp, {}, {}, {}});
}

std::string fresh_name(const std::string& base) {
  static std::atomic<std::uint64_t> counter{0};
  std::string stem = base;
  if (auto pos = stem.rfind('\''); pos != std::string::npos && pos + 1 < stem.size() &&
      stem.find_first_not_of("0123456789", pos + 1) == std::string::npos)
    stem = stem.substr(0, pos);
  return stem + "'" + std::to_string(++counter);
}

namespace {

using NameMap = std::map<std::string, std::string>;

bool aeq_v(const ValuePtr& a, const ValuePtr& b, NameMap& m);
bool aeq_c(const CompPtr& a, const CompPtr& b, NameMap& m);

// Bound names of `a` map to names of `b`; free names must match exactly.
std::string rename(const NameMap& m, const std::string& x) {
  auto it = m.find(x);
  return it == m.end() ? x : it->second;
}

struct Scoped {
  NameMap& m;
  std::string key;
  std::optional<std::string> old;
  Scoped(NameMap& m_, const std::string& xa, const std::string& xb) : m(m_), key(xa) {
    if (auto it = m.find(xa); it != m.end()) old = it->second;
    m[xa] = xb;
  }
  ~Scoped() {
    if (old) m[key] = *old;
    else m.erase(key);
  }
};

bool aeq_v(const ValuePtr& a, const ValuePtr& b, NameMap& m) {
  if (a->v.index() != b->v.index()) return false;
  if (auto* x = std::get_if<VVar>(&a->v))
    return rename(m, x->name) == std::get<VVar>(b->v).name;
  if (auto* x = std::get_if<VConst>(&a->v)) {
    const auto& y = std::get<VConst>(b->v);
    if (x->name != y.name || x->args.size() != y.args.size()) return false;
    for (std::size_t i = 0; i < x->args.size(); ++i)
      if (!aeq_v(x->args[i], y.args[i], m)) return false;
    return true;
  }
  if (std::holds_alternative<VUnit>(a->v)) return true;
  if (auto* x = std::get_if<VPair>(&a->v)) {
    const auto& y = std::get<VPair>(b->v);
    return aeq_v(x->fst, y.fst, m) && aeq_v(x->snd, y.snd, m);
  }
  if (auto* x = std::get_if<VFun>(&a->v)) {
    const auto& y = std::get<VFun>(b->v);
    if (x->paramType != y.paramType) return false;
    Scoped s(m, x->param, y.param);
    return aeq_c(x->body, y.body, m);
  }
  const auto& x = std::get<VBox>(a->v);
  const auto& y = std::get<VBox>(b->v);
  return x.grade == y.grade && aeq_v(x.payload, y.payload, m);
}

bool aeq_c(const CompPtr& a, const CompPtr& b, NameMap& m) {
  if (a->v.index() != b->v.index()) return false;
  if (auto* x = std::get_if<CReturn>(&a->v))
    return aeq_v(x->val, std::get<CReturn>(b->v).val, m);
  if (auto* x = std::get_if<CLet>(&a->v)) {
    const auto& y = std::get<CLet>(b->v);
    if (!aeq_c(x->bound, y.bound, m)) return false;
    Scoped s(m, x->var, y.var);
    return aeq_c(x->body, y.body, m);
  }
  if (auto* x = std::get_if<CApply>(&a->v)) {
    const auto& y = std::get<CApply>(b->v);
    return aeq_v(x->fn, y.fn, m) && aeq_v(x->arg, y.arg, m);
  }
  if (auto* x = std::get_if<CMatch>(&a->v)) {
    const auto& y = std::get<CMatch>(b->v);
    if (!aeq_v(x->scrut, y.scrut, m)) return false;
    Scoped s1(m, x->fst, y.fst);
    Scoped s2(m, x->snd, y.snd);
    return aeq_c(x->body, y.body, m);
  }
  if (auto* x = std::get_if<COp>(&a->v)) {
    const auto& y = std::get<COp>(b->v);
    if (x->op != y.op || !aeq_v(x->arg, y.arg, m)) return false;
    Scoped s(m, x->resVar, y.resVar);
    return aeq_c(x->cont, y.cont, m);
  }
  if (auto* x = std::get_if<CDelay>(&a->v)) {
    const auto& y = std::get<CDelay>(b->v);
    return x->grade == y.grade && aeq_c(x->body, y.body, m);
  }
  if (auto* x = std::get_if<CHandle>(&a->v)) {
    const auto& y = std::get<CHandle>(b->v);
    if (!aeq_c(x->body, y.body, m)) return false;
    if (x->clauses.size() != y.clauses.size()) return false;
    for (auto itx = x->clauses.begin(), ity = y.clauses.begin(); itx != x->clauses.end();
         ++itx, ++ity) {
      if (itx->first != ity->first) return false;
      Scoped s1(m, itx->second.param, ity->second.param);
      Scoped s2(m, itx->second.cont, ity->second.cont);
      if (!aeq_c(itx->second.body, ity->second.body, m)) return false;
    }
    Scoped s(m, x->var, y.var);
    return aeq_c(x->cont, y.cont, m);
  }
  const auto& x = std::get<CUnbox>(a->v);
  const auto& y = std::get<CUnbox>(b->v);
  if (x.grade != y.grade || !aeq_v(x.boxed, y.boxed, m)) return false;
  Scoped s(m, x.var, y.var);
  return aeq_c(x.body, y.body, m);
}

ValuePtr fr_v(const ValuePtr& v, NameMap& m);
CompPtr fr_c(const CompPtr& c, NameMap& m);

ValuePtr fr_v(const ValuePtr& v, NameMap& m) {
  if (auto* x = std::get_if<VVar>(&v->v)) return v_var(rename(m, x->name), v->span);
  if (auto* x = std::get_if<VConst>(&v->v)) {
    std::vector<ValuePtr> args;
    for (const auto& a : x->args) args.push_back(fr_v(a, m));
    return v_const(x->name, std::move(args), v->span);
  }
  if (std::holds_alternative<VUnit>(v->v)) return v;
  if (auto* x = std::get_if<VPair>(&v->v))
    return v_pair(fr_v(x->fst, m), fr_v(x->snd, m), v->span);
  if (auto* x = std::get_if<VFun>(&v->v)) {
    std::string p = fresh_name(x->param);
    Scoped s(m, x->param, p);
    return v_fun(p, x->paramType, fr_c(x->body, m), v->span);
  }
  const auto& x = std::get<VBox>(v->v);
  return v_box(x.grade, fr_v(x.payload, m), v->span);
}

CompPtr fr_c(const CompPtr& c, NameMap& m) {
  CompPtr out;
  if (auto* x = std::get_if<CReturn>(&c->v)) {
    out = c_return(fr_v(x->val, m), c->span);
  } else if (auto* x = std::get_if<CLet>(&c->v)) {
    auto bound = fr_c(x->bound, m);
    std::string var = fresh_name(x->var);
    Scoped s(m, x->var, var);
    out = c_let(var, std::move(bound), fr_c(x->body, m), c->span);
  } else if (auto* x = std::get_if<CApply>(&c->v)) {
    out = c_apply(fr_v(x->fn, m), fr_v(x->arg, m), c->span);
  } else if (auto* x = std::get_if<CMatch>(&c->v)) {
    auto scrut = fr_v(x->scrut, m);
    std::string f = fresh_name(x->fst), s2 = fresh_name(x->snd);
    Scoped sa(m, x->fst, f);
    Scoped sb(m, x->snd, s2);
    out = c_match(std::move(scrut), f, s2, fr_c(x->body, m), c->span);
  } else if (auto* x = std::get_if<COp>(&c->v)) {
    auto arg = fr_v(x->arg, m);
    std::string rv = fresh_name(x->resVar);
    Scoped s(m, x->resVar, rv);
    out = c_op(x->op, std::move(arg), rv, fr_c(x->cont, m), c->span);
  } else if (auto* x = std::get_if<CDelay>(&c->v)) {
    out = c_delay(x->grade, fr_c(x->body, m), c->span);
  } else if (auto* x = std::get_if<CHandle>(&c->v)) {
    auto body = fr_c(x->body, m);
    HandlerClauses clauses;
    for (const auto& [op, cl] : x->clauses) {
      std::string p = fresh_name(cl.param), k = fresh_name(cl.cont);
      Scoped sa(m, cl.param, p);
      Scoped sb(m, cl.cont, k);
      clauses.emplace(op, HandlerClause{p, k, fr_c(cl.body, m)});
    }
    std::string var = fresh_name(x->var);
    Scoped s(m, x->var, var);
    out = c_handle(std::move(body), std::move(clauses), var, fr_c(x->cont, m), c->span);
  } else {
    const auto& u = std::get<CUnbox>(c->v);
    auto boxed = fr_v(u.boxed, m);
    std::string var = fresh_name(u.var);
    Scoped s(m, u.var, var);
    out = c_unbox(u.grade, std::move(boxed), var, fr_c(u.body, m), c->span);
  }
  out->boundGrade = c->boundGrade;
  return out;
}

void fv_v(const ValuePtr& v, std::set<std::string>& bound, std::vector<std::string>& out,
          std::set<std::string>& seen);
void fv_c(const CompPtr& c, std::set<std::string>& bound, std::vector<std::string>& out,
          std::set<std::string>& seen);

void fv_v(const ValuePtr& v, std::set<std::string>& bound, std::vector<std::string>& out,
          std::set<std::string>& seen) {
  if (auto* x = std::get_if<VVar>(&v->v)) {
    if (!bound.count(x->name) && seen.insert(x->name).second) out.push_back(x->name);
  } else if (auto* x = std::get_if<VConst>(&v->v)) {
    for (const auto& a : x->args) fv_v(a, bound, out, seen);
  } else if (auto* x = std::get_if<VPair>(&v->v)) {
    fv_v(x->fst, bound, out, seen);
    fv_v(x->snd, bound, out, seen);
  } else if (auto* x = std::get_if<VFun>(&v->v)) {
    bool inserted = bound.insert(x->param).second;
    fv_c(x->body, bound, out, seen);
    if (inserted) bound.erase(x->param);
  } else if (auto* x = std::get_if<VBox>(&v->v)) {
    fv_v(x->payload, bound, out, seen);
  }
}

void fv_c(const CompPtr& c, std::set<std::string>& bound, std::vector<std::string>& out,
          std::set<std::string>& seen) {
  auto with = [&](const std::string& n, auto&& f) {
    bool inserted = bound.insert(n).second;
    f();
    if (inserted) bound.erase(n);
  };
  if (auto* x = std::get_if<CReturn>(&c->v)) {
    fv_v(x->val, bound, out, seen);
  } else if (auto* x = std::get_if<CLet>(&c->v)) {
    fv_c(x->bound, bound, out, seen);
    with(x->var, [&] { fv_c(x->body, bound, out, seen); });
  } else if (auto* x = std::get_if<CApply>(&c->v)) {
    fv_v(x->fn, bound, out, seen);
    fv_v(x->arg, bound, out, seen);
  } else if (auto* x = std::get_if<CMatch>(&c->v)) {
    fv_v(x->scrut, bound, out, seen);
    with(x->fst, [&] { with(x->snd, [&] { fv_c(x->body, bound, out, seen); }); });
  } else if (auto* x = std::get_if<COp>(&c->v)) {
    fv_v(x->arg, bound, out, seen);
    with(x->resVar, [&] { fv_c(x->cont, bound, out, seen); });
  } else if (auto* x = std::get_if<CDelay>(&c->v)) {
    fv_c(x->body, bound, out, seen);
  } else if (auto* x = std::get_if<CHandle>(&c->v)) {
    fv_c(x->body, bound, out, seen);
    for (const auto& [op, cl] : x->clauses)
      with(cl.param, [&] { with(cl.cont, [&] { fv_c(cl.body, bound, out, seen); }); });
    with(x->var, [&] { fv_c(x->cont, bound, out, seen); });
  } else {
    const auto& u = std::get<CUnbox>(c->v);
    fv_v(u.boxed, bound, out, seen);
    with(u.var, [&] { fv_c(u.body, bound, out, seen); });
  }
}

} // namespace

bool alpha_eq(const ValuePtr& a, const ValuePtr& b) {
  NameMap m;
  return aeq_v(a, b, m);
}
bool alpha_eq(const CompPtr& a, const CompPtr& b) {
  NameMap m;
  return aeq_c(a, b, m);
}

ValuePtr freshen(const ValuePtr& v) {
  NameMap m;
  return fr_v(v, m);
}
CompPtr freshen(const CompPtr& m0) {
  NameMap m;
  return fr_c(m0, m);
}

std::vector<std::string> free_vars(const CompPtr& m) {
  std::set<std::string> bound, seen;
  std::vector<std::string> out;
  fv_c(m, bound, out, seen);
  return out;
}

} // namespace ltau
