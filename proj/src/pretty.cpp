#include "ltau/pretty.hpp"

namespace ltau {

namespace {

std::string pv(const ValuePtr& v);
std::string pc(const CompPtr& m);

std::string pv_atom(const ValuePtr& v) {
  bool atom = std::holds_alternative<VVar>(v->v) || std::holds_alternative<VUnit>(v->v) ||
              std::holds_alternative<VConst>(v->v) || std::holds_alternative<VPair>(v->v);
  return atom ? pv(v) : "(" + pv(v) + ")";
}

std::string pv(const ValuePtr& v) {
  if (auto* x = std::get_if<VVar>(&v->v)) return x->name;
  if (auto* x = std::get_if<VConst>(&v->v)) {
    if (x->args.empty()) return x->name;
    std::string out = x->name + "(";
    for (std::size_t i = 0; i < x->args.size(); ++i) out += (i ? ", " : "") + pv(x->args[i]);
    return out + ")";
  }
  if (std::holds_alternative<VUnit>(v->v)) return "()";
  if (auto* x = std::get_if<VPair>(&v->v)) return "(" + pv(x->fst) + ", " + pv(x->snd) + ")";
  if (auto* x = std::get_if<VFun>(&v->v))
    return "fun (" + x->param + " : " + x->paramType.str() + ") -> " + pc(x->body);
  const auto& x = std::get<VBox>(v->v);
  return "box@" + x.grade.str() + " " + pv_atom(x.payload);
}

std::string pc(const CompPtr& m) {
  if (auto* x = std::get_if<CReturn>(&m->v)) return "return " + pv_atom(x->val);
  if (auto* x = std::get_if<CLet>(&m->v))
    return "let " + x->var + " = " + pc(x->bound) + " in\n" + pc(x->body);
  if (auto* x = std::get_if<CApply>(&m->v)) return pv_atom(x->fn) + " " + pv_atom(x->arg);
  if (auto* x = std::get_if<CMatch>(&m->v))
    return "match " + pv_atom(x->scrut) + " with {(" + x->fst + ", " + x->snd + ") -> " +
           pc(x->body) + "}";
  if (auto* x = std::get_if<COp>(&m->v))
    return "perform " + x->op + " " + pv_atom(x->arg) + " as " + x->resVar + " in\n" +
           pc(x->cont);
  if (auto* x = std::get_if<CDelay>(&m->v))
    return "delay " + x->grade.str() + " (" + pc(x->body) + ")";
  if (auto* x = std::get_if<CHandle>(&m->v)) {
    std::string out = "handle (" + pc(x->body) + ") with {";
    bool first = true;
    for (const auto& [op, cl] : x->clauses) {
      if (!first) out += ", ";
      first = false;
      out += op + " " + cl.param + " " + cl.cont + " -> " + pc(cl.body);
    }
    return out + "} to " + x->var + " in\n" + pc(x->cont);
  }
  const auto& x = std::get<CUnbox>(m->v);
  return "unbox@" + x.grade.str() + " " + pv_atom(x.boxed) + " as " + x.var + " in\n" +
         pc(x.body);
}

} // namespace

std::string pretty(const ValuePtr& v) { return pv(v); }
std::string pretty(const CompPtr& m) { return pc(m); }

} // namespace ltau
