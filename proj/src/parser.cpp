#include "ltau/parser.hpp"

#include <map>
#include <set>

#include "ltau/lexer.hpp"

namespace ltau {

namespace {

const std::set<std::string> kKeywords = {
    "return", "let",  "in",     "perform", "as",  "delay", "handle",
    "with",   "to",   "unbox",  "box",     "fun", "match", "unit"};

// Recursive-descent parser. Binders are renamed to globally fresh names on
// the way in, so downstream substitution never captures.
struct Parser {
  const std::vector<Token>& ts;
  const SignatureTable& sig;
  std::string file;
  std::size_t pos = 0;
  // In-scope source name -> fresh name.
  std::map<std::string, std::vector<std::string>> scope;
  std::set<std::string> used;

  const Token& peek(std::size_t k = 0) const { return ts[std::min(pos + k, ts.size() - 1)]; }
  Token next() { return ts[pos++]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_kw(const char* kw) const { return at(Tok::Ident) && peek().text == kw; }
  bool accept(Tok k) {
    if (at(k)) { ++pos; return true; }
    return false;
  }
  bool accept_kw(const char* kw) {
    if (at_kw(kw)) { ++pos; return true; }
    return false;
  }
  Token expect(Tok k, const std::string& what) {
    if (!at(k))
      throw ParseError({"Parse", "expected " + what + ", got '" +
                            (peek().kind == Tok::End ? "end of input" : peek().text) + "'",
                        peek().span, "", ""});
    return next();
  }
  void expect_kw(const char* kw) {
    if (!accept_kw(kw))
      throw ParseError({"Parse", std::string("expected '") + kw + "', got '" + peek().text + "'",
                        peek().span, "", ""});
  }

  [[noreturn]] void fail(const std::string& msg, Span sp) {
    throw ParseError({"Parse", msg, sp, "", ""});
  }

  std::string bind(const std::string& src) {
    std::string fresh = used.count(src) ? fresh_name(src) : src;
    used.insert(fresh);
    scope[src].push_back(fresh);
    return fresh;
  }
  void unbind(const std::string& src) { scope[src].pop_back(); }

  // ---- types ----

  ValueType type_atom() {
    if (accept(Tok::Unit)) return ValueType::unit();
    if (accept_kw("unit")) return ValueType::unit();
    if (accept(Tok::LBracket)) {
      auto g = expect(Tok::Nat, "box grade");
      expect(Tok::RBracket, "]");
      return ValueType::boxed(Grade::nat(g.nat), type_atom());
    }
    if (accept(Tok::LParen)) {
      auto t = type();
      expect(Tok::RParen, ")");
      return t;
    }
    auto id = expect(Tok::Ident, "type");
    if (kKeywords.count(id.text)) fail("unexpected keyword '" + id.text + "' in type", id.span);
    return ValueType::base(id.text);
  }

  ValueType type_prod() {
    auto t = type_atom();
    if (accept(Tok::Star)) return ValueType::prod(t, type_prod());
    return t;
  }

  ValueType type() {
    auto t = type_prod();
    if (accept(Tok::Arrow)) {
      auto ret = type();
      expect(Tok::Bang, "'!' grade of a computation type");
      auto g = expect(Tok::Nat, "grade");
      return ValueType::fun(t, CompType{ret, Grade::nat(g.nat)});
    }
    return t;
  }

  // ---- values ----

  bool starts_value() const {
    switch (peek().kind) {
      case Tok::Unit: case Tok::LParen: return true;
      case Tok::Ident: return !kKeywords.count(peek().text) || peek().text == "fun" ||
                              peek().text == "box";
      default: return false;
    }
  }

  ValuePtr value() {
    Span sp = peek().span;
    if (accept(Tok::Unit)) return v_unit(sp);
    if (accept_kw("fun")) {
      expect(Tok::LParen, "(");
      auto id = expect(Tok::Ident, "parameter name");
      expect(Tok::Colon, ":");
      auto ty = type();
      expect(Tok::RParen, ")");
      expect(Tok::Arrow, "'->'");
      std::string fresh = bind(id.text);
      auto body = comp();
      unbind(id.text);
      return v_fun(fresh, ty, body, sp);
    }
    if (accept_kw("box")) {
      expect(Tok::At, "@ grade");
      auto g = expect(Tok::Nat, "box grade");
      return v_box(Grade::nat(g.nat), value_atom(), sp);
    }
    if (accept(Tok::LParen)) {
      std::vector<ValuePtr> parts{value()};
      while (accept(Tok::Comma)) parts.push_back(value());
      expect(Tok::RParen, ")");
      ValuePtr acc = parts.back();
      for (std::size_t i = parts.size() - 1; i-- > 0;) acc = v_pair(parts[i], acc, sp);
      return acc;
    }
    auto id = expect(Tok::Ident, "value");
    if (kKeywords.count(id.text)) fail("unexpected keyword '" + id.text + "' in value", id.span);
    // bound variables shadow constants and carrier elements
    if (auto it = scope.find(id.text); it != scope.end() && !it->second.empty())
      return v_var(it->second.back(), id.span);
    // constant application f(...) / nullary f()
    if (sig.find_const(id.text) && (at(Tok::LParen) || at(Tok::Unit))) {
      std::vector<ValuePtr> args;
      if (accept(Tok::Unit)) {
        // f() — nullary
      } else {
        expect(Tok::LParen, "(");
        if (!at(Tok::RParen)) {
          args.push_back(value());
          while (accept(Tok::Comma)) args.push_back(value());
        }
        expect(Tok::RParen, ")");
      }
      return v_const(id.text, std::move(args), id.span);
    }
    if (sig.base_of_elem(id.text)) return v_const(id.text, {}, id.span);
    if (sig.find_const(id.text)) return v_const(id.text, {}, id.span);
    return v_var(id.text, id.span); // free variable; the checker reports it if unbound
  }

  ValuePtr value_atom() {
    // box payloads bind tightly: box@2 x y is (box@2 x) applied to... not a
    // value form, so payloads are atoms or parenthesized.
    Span sp = peek().span;
    if (accept(Tok::Unit)) return v_unit(sp);
    if (at(Tok::LParen)) return value();
    if (at_kw("fun") || at_kw("box")) return value();
    auto save = pos;
    auto id = expect(Tok::Ident, "value");
    pos = save;
    (void)id;
    return value();
  }

  // ---- computations ----

  std::vector<std::string> pattern_names() {
    std::vector<std::string> names;
    if (accept(Tok::LParen)) {
      names.push_back(expect(Tok::Ident, "pattern variable").text);
      while (accept(Tok::Comma)) names.push_back(expect(Tok::Ident, "pattern variable").text);
      expect(Tok::RParen, ")");
    } else {
      names.push_back(expect(Tok::Ident, "variable").text);
    }
    return names;
  }

  // let (x, y, z) = M in N  desugars to  let p = M in match p with {(x, q) ->
  // match q with {(y, z) -> N}}.
  CompPtr let_with_pattern(Span sp) {
    auto names = pattern_names();
    expect(Tok::Eq, "=");
    auto bound = comp();
    expect_kw("in");
    if (names.size() == 1) {
      std::string fresh = bind(names[0]);
      auto body = comp();
      unbind(names[0]);
      return c_let(fresh, bound, body, sp);
    }
    std::string tup = fresh_name("p");
    used.insert(tup);
    std::vector<std::string> fresh;
    for (const auto& n : names) fresh.push_back(bind(n));
    auto body = comp();
    for (auto it = names.rbegin(); it != names.rend(); ++it) unbind(*it);
    // unravel the tuple right-to-left
    CompPtr acc = body;
    std::string scrut = tup;
    std::vector<std::string> spines;
    for (std::size_t i = 0; i + 2 < names.size(); ++i) {
      spines.push_back(fresh_name("p"));
      used.insert(spines.back());
    }
    for (std::size_t i = names.size() - 1; i-- > 0;) {
      std::string left = fresh[i];
      std::string right = i + 2 == names.size() ? fresh[i + 1] : spines[i];
      std::string s = i == 0 ? tup : spines[i - 1];
      acc = c_match(v_var(s, sp), left, right, acc, sp);
    }
    return c_let(tup, bound, acc, sp);
  }

  CompPtr comp() {
    Span sp = peek().span;
    if (at(Tok::LParen)) {
      // Either a parenthesized computation or an application whose function
      // is parenthesized; try the application first.
      auto save = pos;
      auto savedScope = scope;
      try {
        auto fn = value();
        if (starts_value()) return c_apply(fn, value(), sp);
      } catch (const ParseError&) {
      }
      pos = save;
      scope = std::move(savedScope);
      expect(Tok::LParen, "(");
      auto m = comp();
      expect(Tok::RParen, ")");
      return m;
    }
    if (accept_kw("return")) return c_return(value(), sp);
    if (accept_kw("let")) return let_with_pattern(sp);
    if (accept_kw("perform")) {
      auto opTok = expect(Tok::Ident, "operation name");
      const OpSignature* op = sig.find_op(opTok.text);
      if (!op) fail("unknown operation " + opTok.text, opTok.span);
      auto arg = value();
      if (accept_kw("as")) {
        auto id = expect(Tok::Ident, "result variable");
        expect_kw("in");
        std::string fresh = bind(id.text);
        auto cont = comp();
        unbind(id.text);
        return c_op(op->name, arg, fresh, cont, sp);
      }
      // generic-effect sugar: continuation returns the result
      std::string res = fresh_name("x");
      used.insert(res);
      return c_op(op->name, arg, res, c_return(v_var(res, sp), sp), sp);
    }
    if (accept_kw("delay")) {
      auto g = expect(Tok::Nat, "delay grade");
      return c_delay(Grade::nat(g.nat), comp(), sp);
    }
    if (accept_kw("unbox")) {
      expect(Tok::At, "@ grade");
      auto g = expect(Tok::Nat, "unbox grade");
      auto boxed = value();
      expect_kw("as");
      auto id = expect(Tok::Ident, "variable");
      expect_kw("in");
      std::string fresh = bind(id.text);
      auto body = comp();
      unbind(id.text);
      return c_unbox(Grade::nat(g.nat), boxed, fresh, body, sp);
    }
    if (accept_kw("match")) {
      auto scrut = value();
      expect_kw("with");
      expect(Tok::LBrace, "{");
      expect(Tok::LParen, "(");
      auto a = expect(Tok::Ident, "pattern variable");
      expect(Tok::Comma, ",");
      auto b = expect(Tok::Ident, "pattern variable");
      expect(Tok::RParen, ")");
      expect(Tok::Arrow, "'->'");
      std::string fa = bind(a.text), fb = bind(b.text);
      auto body = comp();
      unbind(b.text);
      unbind(a.text);
      expect(Tok::RBrace, "}");
      return c_match(scrut, fa, fb, body, sp);
    }
    if (accept_kw("handle")) {
      auto body = comp();
      expect_kw("with");
      expect(Tok::LBrace, "{");
      HandlerClauses clauses;
      bool first = true;
      while (!at(Tok::RBrace)) {
        if (!first) {
          if (!accept(Tok::Comma) && !accept(Tok::Semi))
            fail("expected ',' between handler clauses", peek().span);
        }
        first = false;
        auto opTok = expect(Tok::Ident, "operation name");
        if (!sig.find_op(opTok.text)) fail("unknown operation " + opTok.text, opTok.span);
        if (clauses.count(opTok.text)) fail("duplicate clause for " + opTok.text, opTok.span);
        auto x = expect(Tok::Ident, "clause parameter");
        auto k = expect(Tok::Ident, "clause continuation");
        expect(Tok::Arrow, "'->'");
        std::string fx = bind(x.text), fk = bind(k.text);
        auto cbody = comp();
        unbind(k.text);
        unbind(x.text);
        clauses.emplace(opTok.text, HandlerClause{fx, fk, cbody});
      }
      expect(Tok::RBrace, "}");
      expect_kw("to");
      auto id = expect(Tok::Ident, "variable");
      expect_kw("in");
      std::string fresh = bind(id.text);
      auto cont = comp();
      unbind(id.text);
      return c_handle(body, std::move(clauses), fresh, cont, sp);
    }
    // application: value value
    if (starts_value()) {
      auto fn = value();
      auto arg = value();
      return c_apply(fn, arg, sp);
    }
    fail("expected a computation, got '" + peek().text + "'", sp);
  }

  CompPtr run() {
    auto m = comp();
    if (!at(Tok::End)) fail("trailing input after program: '" + peek().text + "'", peek().span);
    return m;
  }
};

} // namespace

CompPtr parse_program(const std::string& text, const SignatureTable& sig,
                      const std::string& filename) {
  auto toks = lex(text, filename);
  Parser p{toks, sig, filename};
  return p.run();
}

ValueType parse_value_type(const std::string& text, const std::string& filename) {
  auto toks = lex(text, filename);
  SignatureTable empty;
  Parser p{toks, empty, filename};
  auto t = p.type();
  if (!p.at(Tok::End))
    throw ParseError({"Parse", "trailing input after type", p.peek().span, "", ""});
  return t;
}

} // namespace ltau
