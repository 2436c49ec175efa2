#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ltau/types.hpp"

namespace ltau {

// Temporal typing context: an ordered sequence of variable bindings and
// context modalities <tau>.
struct VarBind {
  std::string name;
  ValueType type;
};
struct Mod {
  Grade grade;
};
using CtxEntry = std::variant<VarBind, Mod>;

class Context {
public:
  Context() = default;
  explicit Context(std::vector<CtxEntry> entries) : entries_(std::move(entries)) {}

  const std::vector<CtxEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  Context extend_var(std::string name, ValueType ty) const {
    Context c = *this;
    c.entries_.push_back(VarBind{std::move(name), std::move(ty)});
    return c;
  }
  Context extend_mod(Grade g) const {
    Context c = *this;
    c.entries_.push_back(Mod{g});
    return c;
  }

  bool binds(const std::string& name) const {
    for (const auto& e : entries_)
      if (auto* v = std::get_if<VarBind>(&e); v && v->name == name) return true;
    return false;
  }

  // Variable names pairwise distinct.
  bool well_formed() const;

  std::string str() const;

  friend bool operator==(const Context& a, const Context& b);
  friend bool operator!=(const Context& a, const Context& b) { return !(a == b); }

private:
  std::vector<CtxEntry> entries_;
};

} // namespace ltau
