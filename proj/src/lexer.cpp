#include "ltau/lexer.hpp"

#include <cctype>

namespace ltau {

std::vector<Token> lex(const std::string& src, const std::string& filename) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](char c) {
    if (c == '\n') { ++line; col = 1; } else { ++col; }
    ++i;
  };
  auto err = [&](const std::string& msg) {
    return ParseError({"Lex", msg + " in " + filename, {line, col}, "", ""});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') bump(src[i]);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) { bump(c); continue; }
    Span sp{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string text;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                                src[i] == '_' || src[i] == '\'')) {
        text += src[i];
        bump(src[i]);
      }
      out.push_back({Tok::Ident, text, 0, sp});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t n = 0;
      std::string text;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        n = n * 10 + static_cast<std::uint64_t>(src[i] - '0');
        text += src[i];
        bump(src[i]);
      }
      out.push_back({Tok::Nat, text, n, sp});
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < src.size() && src[i + 1] == b;
    };
    if (two('(', ')')) { bump(c); bump(')'); out.push_back({Tok::Unit, "()", 0, sp}); continue; }
    if (two('-', '>')) { bump(c); bump('>'); out.push_back({Tok::Arrow, "->", 0, sp}); continue; }
    if (two('~', '>')) { bump(c); bump('>'); out.push_back({Tok::Squiggly, "~>", 0, sp}); continue; }
    if (two('|', '-') && i + 2 < src.size() && src[i + 2] == '>') {
      // accept |-> as a synonym for ->
      bump(c); bump('-'); bump('>');
      out.push_back({Tok::Arrow, "|->", 0, sp});
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", 0, sp}); break;
      case ')': out.push_back({Tok::RParen, ")", 0, sp}); break;
      case '{': out.push_back({Tok::LBrace, "{", 0, sp}); break;
      case '}': out.push_back({Tok::RBrace, "}", 0, sp}); break;
      case '[': out.push_back({Tok::LBracket, "[", 0, sp}); break;
      case ']': out.push_back({Tok::RBracket, "]", 0, sp}); break;
      case ',': out.push_back({Tok::Comma, ",", 0, sp}); break;
      case ':': out.push_back({Tok::Colon, ":", 0, sp}); break;
      case ';': out.push_back({Tok::Semi, ";", 0, sp}); break;
      case '=': out.push_back({Tok::Eq, "=", 0, sp}); break;
      case '*': out.push_back({Tok::Star, "*", 0, sp}); break;
      case '!': out.push_back({Tok::Bang, "!", 0, sp}); break;
      case '@': out.push_back({Tok::At, "@", 0, sp}); break;
      default: throw err(std::string("unexpected character '") + c + "'");
    }
    bump(c);
  }
  out.push_back({Tok::End, "", 0, {line, col}});
  return out;
}

} // namespace ltau
