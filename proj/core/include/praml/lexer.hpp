#pragma once

#include <string>
#include <vector>

#include "praml/diag.hpp"
#include "praml/rational.hpp"

namespace praml {

enum class Tok {
  Ident,
  IntLit,   // digits only
  RatLit,   // decimal or a/b form
  KwLet,
  KwRec,
  KwIn,
  KwMatch,
  KwCase,
  KwWith,
  KwFlip,
  KwTick,
  KwProb,
  KwConsume,
  KwShare,
  KwAs,
  KwFun,
  KwIf,
  KwThen,
  KwElse,
  KwTrue,
  KwFalse,
  Pipe,
  Arrow,
  ColonColon,
  Colon,
  Comma,
  Semi,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Equal,
  Less,
  Greater,
  Minus,
  Caret,
  Eof,
};

struct Token {
  Tok kind;
  std::string text;
  Rat value;  // IntLit / RatLit
  Span span;
};

// Tokenizes the whole input. `(* ... *)` comments nest. Identifiers may not
// start with `%`; that prefix is reserved for normalization-introduced
// temporaries.
std::vector<Token> lex(const std::string& text);

}  // namespace praml
