#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ltau/grade.hpp"

namespace ltau {

class ValueType;
struct CompType;

// Ground types: base types, unit, products, and boxed temporal resources.
// Box grades on ground types are always concrete.
class GroundType {
public:
  struct Base { std::string name; };
  struct Unit {};
  struct Prod;
  struct Boxed;
  struct Node;

  static GroundType base(std::string name);
  static GroundType unit();
  static GroundType prod(GroundType a, GroundType b);
  static GroundType boxed(Grade g, GroundType inner);

  template <class T> const T* get() const;
  template <class T> bool holds() const { return get<T>() != nullptr; }

  std::string str() const;

  friend bool operator==(const GroundType& a, const GroundType& b);
  friend bool operator!=(const GroundType& a, const GroundType& b) { return !(a == b); }

private:
  explicit GroundType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct GroundType::Prod { GroundType fst, snd; };
struct GroundType::Boxed { Grade grade; GroundType inner; };
struct GroundType::Node { std::variant<Base, Unit, Prod, Boxed> v; };

template <class T> const T* GroundType::get() const { return std::get_if<T>(&node_->v); }

// Value types extend ground types with functions into computation types.
class ValueType {
public:
  struct Base { std::string name; };
  struct Unit {};
  struct Prod;
  struct Fun;
  struct Boxed;
  struct Node;

  static ValueType base(std::string name);
  static ValueType unit();
  static ValueType prod(ValueType a, ValueType b);
  static ValueType fun(ValueType arg, CompType result);
  static ValueType boxed(Grade g, ValueType inner);

  template <class T> const T* get() const;
  template <class T> bool holds() const { return get<T>() != nullptr; }

  std::string str() const;

  friend bool operator==(const ValueType& a, const ValueType& b);
  friend bool operator!=(const ValueType& a, const ValueType& b) { return !(a == b); }

private:
  explicit ValueType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// X ! tau: computations returning X in exactly tau time units.
struct CompType {
  ValueType ret;
  Grade grade;

  std::string str() const;
  friend bool operator==(const CompType& a, const CompType& b);
  friend bool operator!=(const CompType& a, const CompType& b) { return !(a == b); }
};

struct ValueType::Prod { ValueType fst, snd; };
struct ValueType::Fun { ValueType arg; CompType result; };
struct ValueType::Boxed { Grade grade; ValueType inner; };
struct ValueType::Node { std::variant<Base, Unit, Prod, Fun, Boxed> v; };

template <class T> const T* ValueType::get() const { return std::get_if<T>(&node_->v); }

inline std::string CompType::str() const { return ret.str() + " ! " + grade.str(); }
inline bool operator==(const CompType& a, const CompType& b) {
  return a.ret == b.ret && a.grade == b.grade;
}

// Injective embedding of ground types into value types, and its partial
// inverse. project_ground(embed(g)) == g.
ValueType embed(const GroundType& g);
std::optional<GroundType> project_ground(const ValueType& v);

} // namespace ltau
