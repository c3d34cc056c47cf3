#include "praml/lexer.hpp"

#include <cctype>
#include <map>

namespace praml {

namespace {

const std::map<std::string, Tok> kKeywords = {
    {"let", Tok::KwLet},         {"rec", Tok::KwRec},
    {"in", Tok::KwIn},           {"match", Tok::KwMatch},
    {"case", Tok::KwCase},       {"with", Tok::KwWith},
    {"flip", Tok::KwFlip},       {"tick", Tok::KwTick},
    {"prob", Tok::KwProb},       {"consume", Tok::KwConsume},
    {"share", Tok::KwShare},     {"as", Tok::KwAs},
    {"fun", Tok::KwFun},         {"if", Tok::KwIf},
    {"then", Tok::KwThen},       {"else", Tok::KwElse},
    {"true", Tok::KwTrue},       {"false", Tok::KwFalse},
};

struct Cursor {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  bool done() const { return pos >= src.size(); }
  char peek(std::size_t off = 0) const {
    return pos + off < src.size() ? src[pos + off] : '\0';
  }
  char advance() {
    char c = src[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  Span here() const { return Span{line, col, pos, pos}; }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

std::vector<Token> lex(const std::string& text) {
  Cursor cur{text};
  std::vector<Token> out;

  auto push = [&](Tok k, Span sp, std::string t = "", Rat v = Rat(0)) {
    sp.end = cur.pos;
    out.push_back(Token{k, std::move(t), std::move(v), sp});
  };

  while (!cur.done()) {
    char c = cur.peek();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      cur.advance();
      continue;
    }
    if (c == '(' && cur.peek(1) == '*') {
      Span sp = cur.here();
      cur.advance();
      cur.advance();
      int depth = 1;
      while (depth > 0) {
        if (cur.done()) throw ParseError(sp, "unterminated comment");
        if (cur.peek() == '(' && cur.peek(1) == '*') {
          cur.advance();
          cur.advance();
          ++depth;
        } else if (cur.peek() == '*' && cur.peek(1) == ')') {
          cur.advance();
          cur.advance();
          --depth;
        } else {
          cur.advance();
        }
      }
      continue;
    }

    Span sp = cur.here();
    if (ident_start(c)) {
      std::string word;
      while (!cur.done() && ident_char(cur.peek())) word += cur.advance();
      auto kw = kKeywords.find(word);
      if (kw != kKeywords.end())
        push(kw->second, sp, word);
      else
        push(Tok::Ident, sp, word);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
        num += cur.advance();
      bool is_rat = false;
      if (cur.peek() == '.' && std::isdigit(static_cast<unsigned char>(cur.peek(1)))) {
        is_rat = true;
        num += cur.advance();
        while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
          num += cur.advance();
      } else if (cur.peek() == '/' &&
                 std::isdigit(static_cast<unsigned char>(cur.peek(1)))) {
        is_rat = true;
        num += cur.advance();
        while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
          num += cur.advance();
      }
      auto v = parse_rational(num);
      if (!v) throw ParseError(sp, "malformed number '" + num + "'");
      push(is_rat ? Tok::RatLit : Tok::IntLit, sp, num, *v);
      continue;
    }

    switch (c) {
      case '%':
        throw ParseError(sp, "identifiers may not start with '%' (reserved)");
      case '|':
        cur.advance();
        push(Tok::Pipe, sp);
        continue;
      case '-':
        cur.advance();
        if (cur.peek() == '>') {
          cur.advance();
          push(Tok::Arrow, sp);
        } else {
          push(Tok::Minus, sp);
        }
        continue;
      case ':':
        cur.advance();
        if (cur.peek() == ':') {
          cur.advance();
          push(Tok::ColonColon, sp);
        } else {
          push(Tok::Colon, sp);
        }
        continue;
      case ',':
        cur.advance();
        push(Tok::Comma, sp);
        continue;
      case ';':
        cur.advance();
        push(Tok::Semi, sp);
        continue;
      case '(':
        cur.advance();
        push(Tok::LParen, sp);
        continue;
      case ')':
        cur.advance();
        push(Tok::RParen, sp);
        continue;
      case '[':
        cur.advance();
        push(Tok::LBracket, sp);
        continue;
      case ']':
        cur.advance();
        push(Tok::RBracket, sp);
        continue;
      case '{':
        cur.advance();
        push(Tok::LBrace, sp);
        continue;
      case '}':
        cur.advance();
        push(Tok::RBrace, sp);
        continue;
      case '=':
        cur.advance();
        push(Tok::Equal, sp);
        continue;
      case '<':
        cur.advance();
        push(Tok::Less, sp);
        continue;
      case '>':
        cur.advance();
        push(Tok::Greater, sp);
        continue;
      case '^':
        cur.advance();
        push(Tok::Caret, sp);
        continue;
      default:
        throw ParseError(sp, std::string("unexpected character '") + c + "'");
    }
  }
  push(Tok::Eof, cur.here());
  return out;
}

}  // namespace praml
