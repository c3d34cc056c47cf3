#include "praml/rational.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace praml {

std::optional<Rat> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  bool neg = false;
  if (text[pos] == '-' || text[pos] == '+') {
    neg = text[pos] == '-';
    ++pos;
  }
  std::string intpart, fracpart, denpart;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
    intpart += text[pos++];
  if (intpart.empty()) return std::nullopt;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      fracpart += text[pos++];
    if (fracpart.empty()) return std::nullopt;
  } else if (pos < text.size() && text[pos] == '/') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      denpart += text[pos++];
    if (denpart.empty()) return std::nullopt;
  }
  if (pos != text.size()) return std::nullopt;

  mpz_class num(intpart, 10);
  mpz_class den(1);
  if (!fracpart.empty()) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fracpart.size());
    num = num * scale + mpz_class(fracpart, 10);
    den = scale;
  } else if (!denpart.empty()) {
    den = mpz_class(denpart, 10);
    if (den == 0) return std::nullopt;
  }
  if (neg) num = -num;
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_pretty_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", r.get_d());
  return to_string(r) + " (~" + buf + ")";
}

}  // namespace praml
