#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ltau/diagnostics.hpp"

namespace ltau {

// Three-valued answer for grade comparisons: a symbolic grade stands for all
// possible instantiations of its rigid variable, so some comparisons have no
// uniform truth value.
enum class Cmp { Yes, No, Unknown };

// A time quantity: constant + coeff * r, where r is a rigid grade variable
// introduced per handler clause. Concrete grades have coeff == 0. The rigid
// id distinguishes variables of nested clause checks; mixing two distinct
// rigid variables in one grade is rejected (single-variable fragment).
struct Grade {
  std::uint64_t constant = 0;
  std::uint64_t coeff = 0;
  std::uint32_t rigid = 0; // meaningful only when coeff > 0

  static Grade nat(std::uint64_t n) { return {n, 0, 0}; }
  static Grade zero() { return {0, 0, 0}; }
  static Grade rigid_var(std::uint32_t id) { return {0, 1, id}; }

  bool concrete() const { return coeff == 0; }
  bool is_zero() const { return constant == 0 && coeff == 0; }

  std::uint64_t as_nat() const {
    if (!concrete()) throw internal("grade " + str() + " used where a concrete grade is required");
    return constant;
  }

  friend bool operator==(const Grade& a, const Grade& b) {
    if (a.coeff == 0 && b.coeff == 0) return a.constant == b.constant;
    return a.constant == b.constant && a.coeff == b.coeff && a.rigid == b.rigid;
  }
  friend bool operator!=(const Grade& a, const Grade& b) { return !(a == b); }

  std::string str() const {
    if (concrete()) return std::to_string(constant);
    std::string v = coeff == 1 ? "r" : std::to_string(coeff) + "r";
    return constant == 0 ? v : std::to_string(constant) + "+" + v;
  }
};

inline Grade operator+(const Grade& a, const Grade& b) {
  if (a.coeff > 0 && b.coeff > 0 && a.rigid != b.rigid)
    throw SymbolicUnderflow({"Grade", "sum mixes two distinct rigid grade variables", {},
                             a.str(), b.str()});
  Grade g;
  g.constant = a.constant + b.constant;
  g.coeff = a.coeff + b.coeff;
  g.rigid = a.coeff > 0 ? a.rigid : b.rigid;
  return g;
}

// Sound order: (a, b) <= (a', b') iff a <= a' and b <= b', quantifying over
// all values of the rigid variable. Mixed-variable or cross-over comparisons
// answer Unknown.
inline Cmp grade_leq(const Grade& a, const Grade& b) {
  if (a.coeff > 0 && b.coeff > 0 && a.rigid != b.rigid) return Cmp::Unknown;
  if (a.constant <= b.constant && a.coeff <= b.coeff) return Cmp::Yes;
  if (b.constant < a.constant && b.coeff <= a.coeff) return Cmp::No;
  return Cmp::Unknown;
}

// Componentwise monus. Defined when the subtrahend's coefficient fits under
// the minuend's and the result is uniform in the rigid variable; in
// particular total (truncating) on concrete grades.
inline std::optional<Grade> grade_monus(const Grade& a, const Grade& b) {
  if (a.coeff > 0 && b.coeff > 0 && a.rigid != b.rigid) return std::nullopt;
  if (b.coeff > a.coeff) return std::nullopt;
  std::uint64_t ck = a.coeff - b.coeff;
  std::uint64_t cst;
  if (b.constant <= a.constant) {
    cst = a.constant - b.constant;
  } else {
    if (ck > 0) return std::nullopt; // e.g. (2+2r) - (5+r): not uniform in r
    cst = 0;
  }
  Grade g{cst, ck, ck > 0 ? a.rigid : 0};
  return g;
}

inline Grade grade_monus_or_throw(const Grade& a, const Grade& b, const char* who) {
  auto r = grade_monus(a, b);
  if (!r)
    throw SymbolicUnderflow({who, "grade subtraction " + a.str() + " - " + b.str() +
                                      " has no uniform value", {}, "", ""});
  return *r;
}

} // namespace ltau
