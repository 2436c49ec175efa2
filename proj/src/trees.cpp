#include "ltau/trees.hpp"

namespace ltau {

SemValue::SemValue() : node_(std::make_shared<const Node>(Node{UnitV{}})) {}

SemValue SemValue::elem(std::string base, std::string e) {
  return SemValue(std::make_shared<const Node>(Node{BaseElem{std::move(base), std::move(e)}}));
}
SemValue SemValue::unit() { return SemValue(std::make_shared<const Node>(Node{UnitV{}})); }
SemValue SemValue::pair(SemValue a, SemValue b) {
  return SemValue(std::make_shared<const Node>(Node{PairV{std::move(a), std::move(b)}}));
}
SemValue SemValue::fun(SemFun f) {
  return SemValue(std::make_shared<const Node>(Node{FunV{std::move(f)}}));
}
SemValue SemValue::boxed(std::uint64_t availableAt, SemValue payload, std::uint64_t id) {
  return SemValue(std::make_shared<const Node>(
      Node{BoxedV{availableAt, std::make_shared<const SemValue>(std::move(payload)), id}}));
}
SemValue SemValue::tree(CompTree t) {
  return SemValue(std::make_shared<const Node>(Node{TreeV{std::move(t)}}));
}

std::string SemValue::str() const {
  if (auto* x = get<BaseElem>()) return x->elem;
  if (holds<UnitV>()) return "()";
  if (auto* x = get<PairV>()) return "(" + x->fst.str() + ", " + x->snd.str() + ")";
  if (holds<FunV>()) return "<fun>";
  if (auto* x = get<BoxedV>())
    return "box[at " + std::to_string(x->availableAt) + "] " + x->payload->str();
  return "<tree>";
}

CompTree t_ret(SemValue v) {
  return std::make_shared<const TreeNode>(TreeNode{RetNode{std::move(v)}});
}
CompTree t_delay(std::uint64_t tau, CompTree cont) {
  return std::make_shared<const TreeNode>(TreeNode{DelayTreeNode{tau, std::move(cont)}});
}
CompTree t_op(const std::string& op, SemValue arg, Cont cont, const SignatureTable& sig) {
  const OpSignature* decl = sig.find_op(op);
  if (!decl) throw CarrierError({"Tree", "unknown operation " + op, {}, "", ""});
  return std::make_shared<const TreeNode>(TreeNode{OpTreeNode{op, std::move(arg), std::move(cont)}});
}

CompTree bind_tree(const CompTree& t, const Cont& k) {
  if (auto* r = std::get_if<RetNode>(&t->v)) return k(r->value);
  if (auto* o = std::get_if<OpTreeNode>(&t->v)) {
    Cont inner = o->cont;
    return std::make_shared<const TreeNode>(
        TreeNode{OpTreeNode{o->op, o->arg, [inner, k](const SemValue& b) {
                              return bind_tree(inner(b), k);
                            }}});
  }
  const auto& d = std::get<DelayTreeNode>(t->v);
  return t_delay(d.tau, bind_tree(d.cont, k));
}

CompTree mu(const CompTree& t) {
  return bind_tree(t, [](const SemValue& v) {
    auto* inner = v.get<SemValue::TreeV>();
    if (!inner) throw internal("mu applied to a tree whose leaves are not trees");
    return inner->tree;
  });
}

CompTree map_tree(const CompTree& t, const std::function<SemValue(const SemValue&)>& f) {
  return bind_tree(t, [f](const SemValue& v) { return t_ret(f(v)); });
}

CompTree strength(const SemValue& payload, std::uint64_t avail, const CompTree& t,
                  const SignatureTable& sig) {
  if (auto* r = std::get_if<RetNode>(&t->v)) {
    if (avail != 0)
      throw internal("strength: availability " + std::to_string(avail) +
                     " left over at a leaf (grade bookkeeping bug)");
    return t_ret(SemValue::pair(payload, r->value));
  }
  if (auto* o = std::get_if<OpTreeNode>(&t->v)) {
    std::uint64_t dur = sig.find_op(o->op)->duration.as_nat();
    if (avail < dur) throw internal("strength: availability underflow at op node");
    Cont inner = o->cont;
    SemValue p = payload;
    std::uint64_t rest = avail - dur;
    const SignatureTable* s = &sig;
    return std::make_shared<const TreeNode>(
        TreeNode{OpTreeNode{o->op, o->arg, [inner, p, rest, s](const SemValue& b) {
                              return strength(p, rest, inner(b), *s);
                            }}});
  }
  const auto& d = std::get<DelayTreeNode>(t->v);
  if (avail < d.tau) throw internal("strength: availability underflow at delay node");
  return t_delay(d.tau, strength(payload, avail - d.tau, d.cont, sig));
}

CompTree canonicalize_delays(const CompTree& t) {
  if (std::holds_alternative<RetNode>(t->v)) return t;
  if (auto* o = std::get_if<OpTreeNode>(&t->v)) {
    Cont inner = o->cont;
    return std::make_shared<const TreeNode>(
        TreeNode{OpTreeNode{o->op, o->arg, [inner](const SemValue& b) {
                              return canonicalize_delays(inner(b));
                            }}});
  }
  const auto& d = std::get<DelayTreeNode>(t->v);
  CompTree cont = canonicalize_delays(d.cont);
  if (d.tau == 0) return cont;
  if (auto* dd = std::get_if<DelayTreeNode>(&cont->v)) return t_delay(d.tau + dd->tau, dd->cont);
  return t_delay(d.tau, cont);
}

CompTree handle_chi(const SemClauses& clauses, const CompTree& t, const SignatureTable& sig,
                    std::uint64_t now) {
  if (auto* r = std::get_if<RetNode>(&t->v)) {
    auto* inner = r->value.get<SemValue::TreeV>();
    if (!inner) throw internal("handle_chi: leaf does not hold a continuation tree");
    return inner->tree;
  }
  if (auto* d = std::get_if<DelayTreeNode>(&t->v))
    return t_delay(d->tau, handle_chi(clauses, d->cont, sig, now + d->tau));
  const auto& o = std::get<OpTreeNode>(t->v);
  auto it = clauses.find(o.op);
  if (it == clauses.end()) throw internal("handle_chi: no clause for " + o.op);
  std::uint64_t dur = sig.find_op(o.op)->duration.as_nat();
  Cont cont = o.cont;
  // the resumption may be forced long after this frame is gone; it owns its
  // own copy of the clause table
  SemClauses cls = clauses;
  const SignatureTable* s = &sig;
  std::uint64_t resume = now + dur;
  SemValue boxedCont = SemValue::boxed(
      resume, SemValue::fun([cont, cls, s, resume](const SemValue& b, std::uint64_t) {
        return handle_chi(cls, cont(b), *s, resume);
      }));
  return it->second(o.arg, boxedCont, now);
}

std::uint64_t tree_grade(const CompTree& t, const SignatureTable& sig) {
  if (std::holds_alternative<RetNode>(t->v)) return 0;
  if (auto* o = std::get_if<OpTreeNode>(&t->v)) {
    const OpSignature* decl = sig.find_op(o->op);
    auto probe = enumerate_carrier(decl->result, 0, sig);
    if (probe.empty()) throw CarrierError({"Tree", "empty carrier for " + o->op, {}, "", ""});
    return decl->duration.as_nat() + tree_grade(o->cont(probe.front()), sig);
  }
  const auto& d = std::get<DelayTreeNode>(t->v);
  return d.tau + tree_grade(d.cont, sig);
}

std::vector<SemValue> enumerate_carrier(const GroundType& g, std::uint64_t at,
                                        const SignatureTable& sig) {
  if (auto* b = g.get<GroundType::Base>()) {
    const BaseDecl* d = sig.find_base(b->name);
    if (!d)
      throw CarrierError({"Carrier", "unknown base type " + b->name, {}, "", ""});
    std::vector<SemValue> out;
    for (const auto& e : d->elems) out.push_back(SemValue::elem(b->name, e));
    return out;
  }
  if (g.holds<GroundType::Unit>()) return {SemValue::unit()};
  if (auto* p = g.get<GroundType::Prod>()) {
    auto as = enumerate_carrier(p->fst, at, sig);
    auto bs = enumerate_carrier(p->snd, at, sig);
    std::vector<SemValue> out;
    for (const auto& a : as)
      for (const auto& b : bs) out.push_back(SemValue::pair(a, b));
    return out;
  }
  const auto& bx = *g.get<GroundType::Boxed>();
  std::uint64_t inner_at = at + bx.grade.as_nat();
  std::vector<SemValue> out;
  for (const auto& v : enumerate_carrier(bx.inner, inner_at, sig))
    out.push_back(SemValue::boxed(inner_at, v));
  return out;
}

bool sem_value_eq(const SemValue& a, const SemValue& b, const SignatureTable& sig) {
  if (a.index() != b.index()) return false;
  if (auto* x = a.get<SemValue::BaseElem>()) {
    auto* y = b.get<SemValue::BaseElem>();
    return x->base == y->base && x->elem == y->elem;
  }
  if (a.holds<SemValue::UnitV>()) return true;
  if (auto* x = a.get<SemValue::PairV>()) {
    auto* y = b.get<SemValue::PairV>();
    return sem_value_eq(x->fst, y->fst, sig) && sem_value_eq(x->snd, y->snd, sig);
  }
  if (a.holds<SemValue::FunV>())
    throw CarrierError({"TreeEq", "cannot compare function values outside a finite carrier",
                        {}, "", ""});
  if (auto* x = a.get<SemValue::BoxedV>()) {
    auto* y = b.get<SemValue::BoxedV>();
    return x->availableAt == y->availableAt && sem_value_eq(*x->payload, *y->payload, sig);
  }
  return tree_eq(a.get<SemValue::TreeV>()->tree, b.get<SemValue::TreeV>()->tree, sig);
}

bool tree_eq(const CompTree& a, const CompTree& b, const SignatureTable& sig, std::uint64_t at) {
  if (a->v.index() != b->v.index()) return false;
  if (auto* x = std::get_if<RetNode>(&a->v))
    return sem_value_eq(x->value, std::get<RetNode>(b->v).value, sig);
  if (auto* x = std::get_if<OpTreeNode>(&a->v)) {
    const auto& y = std::get<OpTreeNode>(b->v);
    if (x->op != y.op || !sem_value_eq(x->arg, y.arg, sig)) return false;
    const OpSignature* decl = sig.find_op(x->op);
    std::uint64_t next = at + decl->duration.as_nat();
    for (const auto& v : enumerate_carrier(decl->result, next, sig))
      if (!tree_eq(x->cont(v), y.cont(v), sig, next)) return false;
    return true;
  }
  const auto& x = std::get<DelayTreeNode>(a->v);
  const auto& y = std::get<DelayTreeNode>(b->v);
  return x.tau == y.tau && tree_eq(x.cont, y.cont, sig, at + x.tau);
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string ser_value(const SemValue& v, const SignatureTable& sig, std::uint64_t at);

std::string ser_tree(const CompTree& t, const SignatureTable& sig, std::uint64_t at) {
  if (auto* r = std::get_if<RetNode>(&t->v))
    return "{\"ret\":" + ser_value(r->value, sig, at) + "}";
  if (auto* o = std::get_if<OpTreeNode>(&t->v)) {
    const OpSignature* decl = sig.find_op(o->op);
    std::uint64_t next = at + decl->duration.as_nat();
    std::string out = "{\"op\":\"" + json_escape(o->op) + "\",\"arg\":" +
                      ser_value(o->arg, sig, at) + ",\"cases\":[";
    bool first = true;
    for (const auto& v : enumerate_carrier(decl->result, next, sig)) {
      if (!first) out += ",";
      first = false;
      out += "{\"result\":" + ser_value(v, sig, next) +
             ",\"tree\":" + ser_tree(o->cont(v), sig, next) + "}";
    }
    return out + "]}";
  }
  const auto& d = std::get<DelayTreeNode>(t->v);
  return "{\"delay\":" + std::to_string(d.tau) +
         ",\"then\":" + ser_tree(d.cont, sig, at + d.tau) + "}";
}

std::string ser_value(const SemValue& v, const SignatureTable& sig, std::uint64_t at) {
  if (auto* x = v.get<SemValue::BaseElem>())
    return "{\"elem\":\"" + json_escape(x->elem) + "\",\"base\":\"" + json_escape(x->base) + "\"}";
  if (v.holds<SemValue::UnitV>()) return "{\"unit\":true}";
  if (auto* x = v.get<SemValue::PairV>())
    return "{\"pair\":[" + ser_value(x->fst, sig, at) + "," + ser_value(x->snd, sig, at) + "]}";
  if (v.holds<SemValue::FunV>()) return "{\"fun\":\"<opaque>\"}";
  if (auto* x = v.get<SemValue::BoxedV>())
    return "{\"boxed\":{\"available_at\":" + std::to_string(x->availableAt) +
           ",\"value\":" + ser_value(*x->payload, sig, x->availableAt) + "}}";
  return "{\"tree\":" + ser_tree(v.get<SemValue::TreeV>()->tree, sig, at) + "}";
}

} // namespace

std::string serialize_tree(const CompTree& t, const SignatureTable& sig, std::uint64_t at) {
  return ser_tree(t, sig, at);
}

} // namespace ltau
