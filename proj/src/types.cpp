#include "ltau/types.hpp"

namespace ltau {

GroundType GroundType::base(std::string name) {
  return GroundType(std::make_shared<const Node>(Node{Base{std::move(name)}}));
}
GroundType GroundType::unit() {
  return GroundType(std::make_shared<const Node>(Node{Unit{}}));
}
GroundType GroundType::prod(GroundType a, GroundType b) {
  return GroundType(std::make_shared<const Node>(Node{Prod{std::move(a), std::move(b)}}));
}
GroundType GroundType::boxed(Grade g, GroundType inner) {
  return GroundType(std::make_shared<const Node>(Node{Boxed{g, std::move(inner)}}));
}

bool operator==(const GroundType& a, const GroundType& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->v.index() != b.node_->v.index()) return false;
  if (auto* p = a.get<GroundType::Base>()) return p->name == b.get<GroundType::Base>()->name;
  if (a.holds<GroundType::Unit>()) return true;
  if (auto* p = a.get<GroundType::Prod>()) {
    auto* q = b.get<GroundType::Prod>();
    return p->fst == q->fst && p->snd == q->snd;
  }
  auto* p = a.get<GroundType::Boxed>();
  auto* q = b.get<GroundType::Boxed>();
  return p->grade == q->grade && p->inner == q->inner;
}

std::string GroundType::str() const {
  auto atom = [](const GroundType& t) {
    return t.holds<Base>() || t.holds<Unit>() || t.holds<Boxed>();
  };
  if (auto* p = get<Base>()) return p->name;
  if (holds<Unit>()) return "unit";
  if (auto* p = get<Prod>()) {
    auto wrap = [&](const GroundType& t) { return atom(t) ? t.str() : "(" + t.str() + ")"; };
    return wrap(p->fst) + " * " + wrap(p->snd);
  }
  auto* b = get<Boxed>();
  return "[" + b->grade.str() + "] " + (atom(b->inner) ? b->inner.str() : "(" + b->inner.str() + ")");
}

ValueType ValueType::base(std::string name) {
  return ValueType(std::make_shared<const Node>(Node{Base{std::move(name)}}));
}
ValueType ValueType::unit() {
  return ValueType(std::make_shared<const Node>(Node{Unit{}}));
}
ValueType ValueType::prod(ValueType a, ValueType b) {
  return ValueType(std::make_shared<const Node>(Node{Prod{std::move(a), std::move(b)}}));
}
ValueType ValueType::fun(ValueType arg, CompType result) {
  return ValueType(std::make_shared<const Node>(Node{Fun{std::move(arg), std::move(result)}}));
}
ValueType ValueType::boxed(Grade g, ValueType inner) {
  return ValueType(std::make_shared<const Node>(Node{Boxed{g, std::move(inner)}}));
}

bool operator==(const ValueType& a, const ValueType& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->v.index() != b.node_->v.index()) return false;
  if (auto* p = a.get<ValueType::Base>()) return p->name == b.get<ValueType::Base>()->name;
  if (a.holds<ValueType::Unit>()) return true;
  if (auto* p = a.get<ValueType::Prod>()) {
    auto* q = b.get<ValueType::Prod>();
    return p->fst == q->fst && p->snd == q->snd;
  }
  if (auto* p = a.get<ValueType::Fun>()) {
    auto* q = b.get<ValueType::Fun>();
    return p->arg == q->arg && p->result == q->result;
  }
  auto* p = a.get<ValueType::Boxed>();
  auto* q = b.get<ValueType::Boxed>();
  return p->grade == q->grade && p->inner == q->inner;
}

std::string ValueType::str() const {
  auto atom = [](const ValueType& t) {
    return t.holds<Base>() || t.holds<Unit>() || t.holds<Boxed>();
  };
  if (auto* p = get<Base>()) return p->name;
  if (holds<Unit>()) return "unit";
  if (auto* p = get<Prod>()) {
    auto wrap = [&](const ValueType& t) { return atom(t) ? t.str() : "(" + t.str() + ")"; };
    return wrap(p->fst) + " * " + wrap(p->snd);
  }
  if (auto* p = get<Fun>()) {
    bool la = atom(p->arg) || p->arg.holds<Prod>();
    return (la ? p->arg.str() : "(" + p->arg.str() + ")") + " -> " + p->result.str();
  }
  auto* b = get<Boxed>();
  return "[" + b->grade.str() + "] " + (atom(b->inner) ? b->inner.str() : "(" + b->inner.str() + ")");
}

ValueType embed(const GroundType& g) {
  if (auto* p = g.get<GroundType::Base>()) return ValueType::base(p->name);
  if (g.holds<GroundType::Unit>()) return ValueType::unit();
  if (auto* p = g.get<GroundType::Prod>()) return ValueType::prod(embed(p->fst), embed(p->snd));
  auto* b = g.get<GroundType::Boxed>();
  return ValueType::boxed(b->grade, embed(b->inner));
}

std::optional<GroundType> project_ground(const ValueType& v) {
  if (auto* p = v.get<ValueType::Base>()) return GroundType::base(p->name);
  if (v.holds<ValueType::Unit>()) return GroundType::unit();
  if (auto* p = v.get<ValueType::Prod>()) {
    auto a = project_ground(p->fst);
    auto b = project_ground(p->snd);
    if (!a || !b) return std::nullopt;
    return GroundType::prod(*a, *b);
  }
  if (auto* p = v.get<ValueType::Boxed>()) {
    if (!p->grade.concrete()) return std::nullopt;
    auto i = project_ground(p->inner);
    if (!i) return std::nullopt;
    return GroundType::boxed(p->grade, *i);
  }
  return std::nullopt; // functions are not ground
}

} // namespace ltau
