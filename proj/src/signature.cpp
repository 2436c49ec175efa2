#include "ltau/signature.hpp"

#include <set>

#include "ltau/lexer.hpp"

namespace ltau {

GroundLiteral GroundLiteral::elem(std::string name) {
  return {std::make_shared<const Node>(Elem{std::move(name)})};
}
GroundLiteral GroundLiteral::unit() { return {std::make_shared<const Node>(Unit{})}; }
GroundLiteral GroundLiteral::pair(GroundLiteral a, GroundLiteral b) {
  return {std::make_shared<const Node>(Pair{std::move(a), std::move(b)})};
}

std::string GroundLiteral::str() const {
  if (auto* e = std::get_if<Elem>(node.get())) return e->name;
  if (std::holds_alternative<Unit>(*node)) return "()";
  const auto& p = std::get<Pair>(*node);
  return "(" + p.fst.str() + ", " + p.snd.str() + ")";
}

bool operator==(const GroundLiteral& a, const GroundLiteral& b) {
  if (a.node->index() != b.node->index()) return false;
  if (auto* e = std::get_if<GroundLiteral::Elem>(a.node.get()))
    return e->name == std::get<GroundLiteral::Elem>(*b.node).name;
  if (std::holds_alternative<GroundLiteral::Unit>(*a.node)) return true;
  const auto& p = std::get<GroundLiteral::Pair>(*a.node);
  const auto& q = std::get<GroundLiteral::Pair>(*b.node);
  return p.fst == q.fst && p.snd == q.snd;
}

bool operator<(const GroundLiteral& a, const GroundLiteral& b) {
  return a.str() < b.str();
}

void SignatureTable::add_base(BaseDecl d) {
  for (const auto& e : d.elems) elem_to_base_[e] = d.name;
  bases_.push_back(std::move(d));
}
void SignatureTable::add_const(ConstSig c) { consts_.push_back(std::move(c)); }
void SignatureTable::add_op(OpSignature op) { ops_.push_back(std::move(op)); }

const BaseDecl* SignatureTable::find_base(const std::string& name) const {
  for (const auto& b : bases_)
    if (b.name == name) return &b;
  return nullptr;
}
const ConstSig* SignatureTable::find_const(const std::string& name) const {
  for (const auto& c : consts_)
    if (c.name == name) return &c;
  return nullptr;
}
const OpSignature* SignatureTable::find_op(const std::string& name) const {
  for (const auto& o : ops_)
    if (o.name == name) return &o;
  return nullptr;
}
const BaseDecl* SignatureTable::base_of_elem(const std::string& elem) const {
  auto it = elem_to_base_.find(elem);
  return it == elem_to_base_.end() ? nullptr : find_base(it->second);
}

namespace {

// Enumerate box-free literals of a ground type; nullopt when the type
// mentions a box (literals cannot carry timestamps).
std::optional<std::vector<GroundLiteral>> enumerate_literals(const GroundType& g,
                                                             const SignatureTable& sig) {
  if (auto* b = g.get<GroundType::Base>()) {
    const BaseDecl* d = sig.find_base(b->name);
    if (!d) return std::nullopt;
    std::vector<GroundLiteral> out;
    for (const auto& e : d->elems) out.push_back(GroundLiteral::elem(e));
    return out;
  }
  if (g.holds<GroundType::Unit>())
    return std::vector<GroundLiteral>{GroundLiteral::unit()};
  if (auto* p = g.get<GroundType::Prod>()) {
    auto a = enumerate_literals(p->fst, sig);
    auto b = enumerate_literals(p->snd, sig);
    if (!a || !b) return std::nullopt;
    std::vector<GroundLiteral> out;
    for (const auto& x : *a)
      for (const auto& y : *b) out.push_back(GroundLiteral::pair(x, y));
    return out;
  }
  return std::nullopt;
}

void check_ground_resolvable(const GroundType& g, const SignatureTable& sig, const char* who) {
  if (auto* b = g.get<GroundType::Base>()) {
    if (!sig.find_base(b->name))
      throw SignatureError({who, "unknown base type " + b->name, {}, "", ""});
  } else if (auto* p = g.get<GroundType::Prod>()) {
    check_ground_resolvable(p->fst, sig, who);
    check_ground_resolvable(p->snd, sig, who);
  } else if (auto* p = g.get<GroundType::Boxed>()) {
    check_ground_resolvable(p->inner, sig, who);
  }
}

} // namespace

void SignatureTable::validate() const {
  std::set<std::string> names;
  for (const auto& b : bases_) {
    if (!names.insert(b.name).second)
      throw SignatureError({"Signature", "duplicate base type " + b.name, {}, "", ""});
    if (b.elems.empty())
      throw SignatureError({"Signature", "base type " + b.name + " has an empty carrier", {}, "", ""});
    std::set<std::string> es;
    for (const auto& e : b.elems)
      if (!es.insert(e).second)
        throw SignatureError({"Signature", "duplicate carrier element " + e, {}, "", ""});
  }
  std::set<std::string> elems;
  for (const auto& b : bases_)
    for (const auto& e : b.elems)
      if (!elems.insert(e).second)
        throw SignatureError(
            {"Signature", "carrier element " + e + " declared in two base types", {}, "", ""});
  std::set<std::string> cnames;
  for (const auto& c : consts_) {
    if (!cnames.insert(c.name).second)
      throw SignatureError({"Signature", "duplicate constant " + c.name, {}, "", ""});
    if (elems.count(c.name))
      throw SignatureError({"Signature", "constant " + c.name + " shadows a carrier element", {}, "", ""});
    for (const auto& p : c.params) check_ground_resolvable(p, *this, "Signature");
    check_ground_resolvable(c.result, *this, "Signature");
    // Totality of the interpretation over the carrier product.
    std::vector<std::vector<GroundLiteral>> doms;
    for (const auto& p : c.params) {
      auto d = enumerate_literals(p, *this);
      if (!d)
        throw SignatureError({"Signature",
                              "constant " + c.name + " has a boxed parameter type; interpretation "
                              "tables support only box-free ground types", {}, "", ""});
      doms.push_back(std::move(*d));
    }
    auto rng = enumerate_literals(c.result, *this);
    if (!rng)
      throw SignatureError({"Signature", "constant " + c.name + " has a boxed result type", {}, "", ""});
    std::vector<std::size_t> idx(doms.size(), 0);
    while (true) {
      std::vector<GroundLiteral> args;
      for (std::size_t i = 0; i < doms.size(); ++i) args.push_back(doms[i][idx[i]]);
      auto it = c.interp.find(args);
      if (it == c.interp.end()) {
        std::string call = c.name + "(";
        for (std::size_t i = 0; i < args.size(); ++i)
          call += (i ? ", " : "") + args[i].str();
        throw SignatureError({"Signature", "interpretation of " + call + ") missing", {}, "", ""});
      }
      bool ok = false;
      for (const auto& r : *rng)
        if (r == it->second) ok = true;
      if (!ok)
        throw SignatureError({"Signature", "interpretation of " + c.name +
                                               " maps outside the result carrier", {}, "", ""});
      std::size_t i = 0;
      for (; i < idx.size(); ++i) {
        if (++idx[i] < doms[i].size()) break;
        idx[i] = 0;
      }
      if (i == idx.size()) break;
      if (doms.empty()) break;
    }
  }
  std::set<std::string> onames;
  for (const auto& o : ops_) {
    if (!onames.insert(o.name).second)
      throw SignatureError({"Signature", "duplicate operation " + o.name, {}, "", ""});
    if (!o.duration.concrete())
      throw SignatureError({"Signature", "operation durations must be concrete", {}, "", ""});
    check_ground_resolvable(o.param, *this, "Signature");
    check_ground_resolvable(o.result, *this, "Signature");
  }
}

namespace {

struct SigParser {
  const std::vector<Token>& ts;
  std::size_t pos = 0;
  std::string file;

  const Token& peek() const { return ts[pos]; }
  Token next() { return ts[pos++]; }
  bool at(Tok k) const { return ts[pos].kind == k; }
  Token expect(Tok k, const std::string& what) {
    if (!at(k))
      throw ParseError({"Signature", "expected " + what + ", got '" + peek().text + "'",
                        peek().span, "", ""});
    return next();
  }
  bool accept(Tok k) {
    if (at(k)) { ++pos; return true; }
    return false;
  }

  GroundType atom() {
    if (accept(Tok::Unit)) return GroundType::unit();
    if (at(Tok::Ident) && peek().text == "unit") { next(); return GroundType::unit(); }
    if (accept(Tok::LBracket)) {
      auto n = expect(Tok::Nat, "box grade");
      expect(Tok::RBracket, "]");
      return GroundType::boxed(Grade::nat(n.nat), atom());
    }
    if (accept(Tok::LParen)) {
      auto t = type();
      expect(Tok::RParen, ")");
      return t;
    }
    auto id = expect(Tok::Ident, "base type name");
    return GroundType::base(id.text);
  }

  GroundType type() {
    auto t = atom();
    if (accept(Tok::Star)) return GroundType::prod(t, type());
    return t;
  }

  GroundLiteral literal() {
    if (accept(Tok::Unit)) return GroundLiteral::unit();
    if (accept(Tok::LParen)) {
      std::vector<GroundLiteral> parts{literal()};
      expect(Tok::Comma, ",");
      parts.push_back(literal());
      while (accept(Tok::Comma)) parts.push_back(literal());
      expect(Tok::RParen, ")");
      // tuples nest to the right, matching A * (B * C)
      GroundLiteral acc = parts.back();
      for (std::size_t i = parts.size() - 1; i-- > 0;)
        acc = GroundLiteral::pair(parts[i], acc);
      return acc;
    }
    return GroundLiteral::elem(expect(Tok::Ident, "carrier element").text);
  }

  SignatureTable run() {
    SignatureTable sig;
    while (!at(Tok::End)) {
      auto kw = expect(Tok::Ident, "declaration keyword");
      if (kw.text == "base") {
        BaseDecl d;
        d.name = expect(Tok::Ident, "base type name").text;
        expect(Tok::Eq, "=");
        expect(Tok::LBrace, "{");
        d.elems.push_back(expect(Tok::Ident, "carrier element").text);
        while (accept(Tok::Comma)) d.elems.push_back(expect(Tok::Ident, "carrier element").text);
        expect(Tok::RBrace, "}");
        sig.add_base(std::move(d));
      } else if (kw.text == "const") {
        std::string name = expect(Tok::Ident, "constant name").text;
        std::vector<GroundType> params;
        expect(Tok::Colon, ":");
        expect(Tok::LParen, "(");
        if (!at(Tok::RParen)) {
          params.push_back(type());
          while (accept(Tok::Comma)) params.push_back(type());
        }
        expect(Tok::RParen, ")");
        expect(Tok::Arrow, "->");
        ConstSig c{std::move(name), std::move(params), type(), {}};
        expect(Tok::Eq, "=");
        expect(Tok::LBrace, "{");
        bool first = true;
        while (!at(Tok::RBrace)) {
          if (!first) expect(Tok::Comma, ",");
          first = false;
          std::vector<GroundLiteral> args;
          if (c.params.size() == 1) {
            args.push_back(literal());
          } else {
            expect(Tok::LParen, "(");
            if (!at(Tok::RParen)) {
              args.push_back(literal());
              while (accept(Tok::Comma)) args.push_back(literal());
            }
            expect(Tok::RParen, ")");
          }
          if (args.size() != c.params.size())
            throw ParseError({"Signature", "interpretation arity mismatch for " + c.name,
                              peek().span, std::to_string(c.params.size()),
                              std::to_string(args.size())});
          expect(Tok::Arrow, "->");
          c.interp[args] = literal();
        }
        expect(Tok::RBrace, "}");
        sig.add_const(std::move(c));
      } else if (kw.text == "operation") {
        OpSignature op{.name = expect(Tok::Ident, "operation name").text,
                       .param = GroundType::unit(),
                       .result = GroundType::unit(),
                       .duration = Grade::zero()};
        expect(Tok::Colon, ":");
        op.param = type();
        expect(Tok::Squiggly, "~>");
        op.result = type();
        expect(Tok::Bang, "!");
        op.duration = Grade::nat(expect(Tok::Nat, "duration").nat);
        sig.add_op(std::move(op));
      } else {
        throw ParseError({"Signature", "unknown declaration '" + kw.text + "'", kw.span, "", ""});
      }
    }
    sig.validate();
    return sig;
  }
};

} // namespace

SignatureTable parse_signature(const std::string& text, const std::string& filename) {
  auto toks = lex(text, filename);
  SigParser p{toks, 0, filename};
  return p.run();
}

} // namespace ltau
