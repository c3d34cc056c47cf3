#pragma once

#include <vector>

#include "praml/bound.hpp"

namespace praml::golden {

// Bundled corpus programs and their expected analysis results. Bounds are
// compared structurally (exact rationals); infeasible entries must report
// "no linear bound".
struct Entry {
  const char* name;
  bool feasible;
  Rat constant;
  std::vector<BoundTerm> terms;
};

inline BoundTerm len(int arg, const Rat& coeff, int depth = 0) {
  return BoundTerm{arg, depth, BoundTermKind::Length, coeff};
}
inline BoundTerm probh(int arg, const Rat& coeff, int depth = 1) {
  return BoundTerm{arg, depth, BoundTermKind::ProbH, coeff};
}

inline const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"bernoulli", true, Rat(1), {}},
      {"brdwalk", true, Rat(0), {len(0, Rat(2))}},
      {"rdwalk", true, Rat(0), {len(0, Rat(1)), probh(0, Rat(5))}},
      {"sample_fast", true, Rat(2), {}},
      {"sample_slow", true, Rat(21, 5), {}},
      {"sample_fast_red", true, Rat(3, 10), {}},
      {"sample_fast_black", true, Rat(7, 10), {}},
      {"sample_slow_red", true, Rat(3, 10), {}},
      {"sample_slow_black", true, Rat(7, 10), {}},
      {"dice", true, Rat(11, 3), {}},
      {"binomial", true, Rat(0), {len(1, Rat(1))}},
      {"poisson_binomial", true, Rat(0), {len(0, Rat(1))}},
      {"poisson_binomial_E", true, Rat(0), {probh(0, Rat(1))}},
      {"exists2", true, Rat(0), {len(0, Rat(3))}},
      {"isort_t", true, Rat(0), {len(0, Rat(10))}},
      {"diverge", true, Rat(0), {}},
      {"geometric", false, Rat(0), {}},
      {"negative_binomial", false, Rat(0), {}},
      {"von_neumann", false, Rat(0), {}},
      {"isort", false, Rat(0), {}},
  };
  return entries;
}

}  // namespace praml::golden
