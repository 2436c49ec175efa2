#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltau/diagnostics.hpp"

namespace ltau {

enum class Tok {
  Ident,   // names; primes allowed after the first char
  Nat,     // natural number literal
  LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  Comma, Colon, Semi,
  Eq,       // =
  Arrow,    // ->
  Squiggly, // ~>
  Star,     // *
  Bang,     // !
  At,       // @
  Unit,     // ()
  End
};

struct Token {
  Tok kind;
  std::string text;
  std::uint64_t nat = 0;
  Span span;
};

// Shared lexer for program and signature files. `#` starts a line comment.
std::vector<Token> lex(const std::string& src, const std::string& filename);

} // namespace ltau
