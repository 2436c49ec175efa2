#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ltau/types.hpp"

namespace ltau {

// A literal inhabitant of a ground type without boxes: carrier elements,
// unit, and tuples thereof. Used for constant interpretation tables.
struct GroundLiteral {
  struct Elem { std::string name; };
  struct Unit {};
  struct Pair;
  using Node = std::variant<Elem, Unit, Pair>;

  std::shared_ptr<const Node> node;

  static GroundLiteral elem(std::string name);
  static GroundLiteral unit();
  static GroundLiteral pair(GroundLiteral a, GroundLiteral b);

  std::string str() const;
  friend bool operator==(const GroundLiteral& a, const GroundLiteral& b);
  friend bool operator<(const GroundLiteral& a, const GroundLiteral& b);
};
struct GroundLiteral::Pair { GroundLiteral fst, snd; };

// op : A ~> B ! tau
struct OpSignature {
  std::string name;
  GroundType param;
  GroundType result;
  Grade duration; // concrete
};

struct BaseDecl {
  std::string name;
  std::vector<std::string> elems; // finite carrier, declaration order
};

struct ConstSig {
  std::string name;
  std::vector<GroundType> params;
  GroundType result;
  std::map<std::vector<GroundLiteral>, GroundLiteral> interp;
};

// Declared base types (with finite carriers), constants with total
// interpretations, and operation signatures.
class SignatureTable {
public:
  void add_base(BaseDecl d);
  void add_const(ConstSig c);
  void add_op(OpSignature op);

  const BaseDecl* find_base(const std::string& name) const;
  const ConstSig* find_const(const std::string& name) const;
  const OpSignature* find_op(const std::string& name) const;

  // Base type owning a carrier element, if any. Element names are globally
  // unique across bases.
  const BaseDecl* base_of_elem(const std::string& elem) const;

  const std::vector<OpSignature>& ops() const { return ops_; }
  const std::vector<BaseDecl>& bases() const { return bases_; }
  const std::vector<ConstSig>& consts() const { return consts_; }

  // Checks: op/base/const names unique, carrier elements unique and
  // non-empty, interpretation tables total, ground types resolvable.
  void validate() const;

private:
  std::vector<BaseDecl> bases_;
  std::vector<ConstSig> consts_;
  std::vector<OpSignature> ops_;
  std::map<std::string, std::string> elem_to_base_;
};

// Parse a signature file: one declaration per line, `#` comments.
//   base Part = { body, door }
//   const next : (Part) -> Part = { (body) -> door, (door) -> body }
//   operation paint : Part ~> [4] Part ! 2
SignatureTable parse_signature(const std::string& text, const std::string& filename = "<sig>");

} // namespace ltau
