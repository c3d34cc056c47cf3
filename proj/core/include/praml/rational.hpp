#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace praml {

// All probabilities, costs and annotations are exact rationals. GMP's
// mpq_class keeps values canonical (reduced, positive denominator), so
// equality and ordering are structural.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "3", "-3", "3/2", "0.5", "1.25". Decimal forms are converted to
// exact fractions (0.5 -> 1/2). Returns nullopt on malformed input.
std::optional<Rat> parse_rational(const std::string& text);

// Canonical "a/b" form; integers print without the denominator.
std::string to_string(const Rat& r);

// "a/b (~0.50)" for report output; plain integer strings stay bare.
std::string to_pretty_string(const Rat& r);

inline bool is_nonneg(const Rat& r) { return sgn(r) >= 0; }
inline bool in_unit_interval(const Rat& r) { return sgn(r) >= 0 && r <= 1; }

}  // namespace praml
