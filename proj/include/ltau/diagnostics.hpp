#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ltau {

struct Span {
  int line = 0;
  int col = 0;
  bool known() const { return line > 0; }
  std::string str() const {
    return known() ? std::to_string(line) + ":" + std::to_string(col) : "?";
  }
};

// Structured diagnostic: `rule` names the typing rule or phase that failed,
// `expected`/`actual` are optional rendered payloads.
struct Diagnostic {
  std::string rule;
  std::string message;
  Span span;
  std::string expected;
  std::string actual;

  std::string render() const {
    std::string out = span.known() ? span.str() + ": " : "";
    out += "[" + rule + "] " + message;
    if (!expected.empty() || !actual.empty())
      out += " (expected " + expected + ", got " + actual + ")";
    return out;
  }
};

struct LtauError : std::runtime_error {
  Diagnostic diag;
  explicit LtauError(Diagnostic d) : std::runtime_error(d.render()), diag(std::move(d)) {}
};

struct ParseError : LtauError {
  using LtauError::LtauError;
};

struct SignatureError : LtauError {
  using LtauError::LtauError;
};

struct TypeError : LtauError {
  using LtauError::LtauError;
};

// Raised when a grade comparison has no uniform answer for all instances of
// the rigid variable; the checker turns it into a rejection.
struct SymbolicUnderflow : LtauError {
  using LtauError::LtauError;
};

struct InternalError : LtauError {
  using LtauError::LtauError;
};

// Runtime temporal-safety monitor failure: an unbox executed before its
// resource became available. Unreachable for typechecked programs.
struct MonitorError : std::runtime_error {
  std::uint64_t time;
  std::uint64_t required;
  std::uint64_t resource;
  MonitorError(std::uint64_t t, std::uint64_t req, std::uint64_t res)
      : std::runtime_error("monitor violation: unbox of resource #" + std::to_string(res) +
                           " at time " + std::to_string(t) + ", available at " +
                           std::to_string(req)),
        time(t), required(req), resource(res) {}
};

struct FuelError : std::runtime_error {
  FuelError() : std::runtime_error("evaluation fuel exhausted") {}
};

inline InternalError internal(const std::string& msg) {
  return InternalError({"Internal", msg, {}, "", ""});
}

} // namespace ltau
