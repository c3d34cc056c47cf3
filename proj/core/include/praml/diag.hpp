#pragma once

#include <stdexcept>
#include <string>

namespace praml {

// Half-open byte range into the source text, with 1-based line/column of the
// start for diagnostics.
struct Span {
  int line = 0;
  int col = 0;
  std::size_t begin = 0;
  std::size_t end = 0;

  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(col);
  }
};

class Error : public std::runtime_error {
 public:
  Error(std::string kind, Span span, const std::string& msg)
      : std::runtime_error(span.line > 0 ? span.str() + ": " + kind + ": " + msg
                                         : kind + ": " + msg),
        kind_(std::move(kind)),
        span_(span) {}

  const std::string& kind() const { return kind_; }
  const Span& span() const { return span_; }

 private:
  std::string kind_;
  Span span_;
};

struct ParseError : Error {
  ParseError(Span s, const std::string& m) : Error("syntax error", s, m) {}
};
struct ScopeError : Error {
  ScopeError(Span s, const std::string& m) : Error("scope error", s, m) {}
};
struct TypeError : Error {
  TypeError(Span s, const std::string& m) : Error("type error", s, m) {}
};
struct EvalError : Error {
  EvalError(Span s, const std::string& m) : Error("evaluation error", s, m) {}
};

}  // namespace praml
