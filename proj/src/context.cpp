#include "ltau/context.hpp"

#include <set>

namespace ltau {

bool Context::well_formed() const {
  std::set<std::string> seen;
  for (const auto& e : entries_)
    if (auto* v = std::get_if<VarBind>(&e))
      if (!seen.insert(v->name).second) return false;
  return true;
}

std::string Context::str() const {
  std::string out = ".";
  for (const auto& e : entries_) {
    out += ", ";
    if (auto* v = std::get_if<VarBind>(&e))
      out += v->name + " : " + v->type.str();
    else
      out += "<" + std::get<Mod>(e).grade.str() + ">";
  }
  return out;
}

bool operator==(const Context& a, const Context& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    const auto& x = a.entries_[i];
    const auto& y = b.entries_[i];
    if (x.index() != y.index()) return false;
    if (auto* v = std::get_if<VarBind>(&x)) {
      const auto& w = std::get<VarBind>(y);
      if (v->name != w.name || v->type != w.type) return false;
    } else if (std::get<Mod>(x).grade != std::get<Mod>(y).grade) {
      return false;
    }
  }
  return true;
}

} // namespace ltau
