#pragma once

// Brute-force LP oracle: enumerates candidate vertices as solutions of
// n-subsets of tight constraints (rows as equalities plus coordinate
// hyperplanes), keeps the feasible ones, and minimizes the objective over
// them. Exponential and test-only; independent of the simplex path.

#include <functional>
#include <optional>
#include <vector>

#include "praml/lp.hpp"

namespace praml::testing {

namespace lp_oracle_detail {

// Solves M x = rhs by rational Gaussian elimination; nullopt when
// singular or inconsistent.
inline std::optional<std::vector<Rat>> solve_square(
    std::vector<std::vector<Rat>> m, std::vector<Rat> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n && piv < 0; ++r)
      if (sgn(m[r][col]) != 0) piv = r;
    if (piv < 0) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    Rat p = m[col][col];
    for (int c = 0; c < n; ++c) m[col][c] /= p;
    rhs[col] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      Rat f = m[r][col];
      for (int c = 0; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  return rhs;
}

inline bool feasible_point(const LinearProgram& lp, const std::vector<Rat>& x) {
  for (const Rat& v : x)
    if (sgn(v) < 0) return false;
  for (const auto& row : lp.rows()) {
    Rat lhs(0);
    for (const auto& [v, k] : row.terms) lhs += k * x[v];
    switch (row.rel) {
      case Rel::Eq:
        if (lhs != row.rhs) return false;
        break;
      case Rel::Ge:
        if (lhs < row.rhs) return false;
        break;
      case Rel::Le:
        if (lhs > row.rhs) return false;
        break;
    }
  }
  return true;
}

}  // namespace lp_oracle_detail

struct OracleResult {
  bool any_feasible_vertex = false;
  std::optional<Rat> min_objective;
};

inline OracleResult lp_vertex_oracle(const LinearProgram& lp) {
  using namespace lp_oracle_detail;
  const int n = lp.num_vars();
  // Candidate tight sets: n choose from rows + coordinate planes.
  struct Plane {
    std::vector<Rat> coeffs;
    Rat rhs;
  };
  std::vector<Plane> planes;
  for (const auto& row : lp.rows()) {
    Plane p;
    p.coeffs.assign(n, Rat(0));
    for (const auto& [v, k] : row.terms) p.coeffs[v] += k;
    p.rhs = row.rhs;
    planes.push_back(std::move(p));
  }
  for (int j = 0; j < n; ++j) {
    Plane p;
    p.coeffs.assign(n, Rat(0));
    p.coeffs[j] = 1;
    p.rhs = 0;
    planes.push_back(std::move(p));
  }

  OracleResult result;
  const int m = static_cast<int>(planes.size());
  std::vector<int> idx(n);
  // Enumerate all n-subsets of planes.
  std::vector<int> comb;
  std::function<void(int)> go = [&](int start) {
    if (static_cast<int>(comb.size()) == n) {
      std::vector<std::vector<Rat>> mat;
      std::vector<Rat> rhs;
      for (int i : comb) {
        mat.push_back(planes[i].coeffs);
        rhs.push_back(planes[i].rhs);
      }
      auto x = solve_square(std::move(mat), std::move(rhs));
      if (x && feasible_point(lp, *x)) {
        result.any_feasible_vertex = true;
        Rat obj(0);
        for (const auto& [v, k] : lp.objective()) obj += k * (*x)[v];
        if (!result.min_objective || obj < *result.min_objective)
          result.min_objective = obj;
      }
      return;
    }
    for (int i = start; i < m; ++i) {
      comb.push_back(i);
      go(i + 1);
      comb.pop_back();
    }
  };
  go(0);
  (void)idx;
  return result;
}

// Validates an unboundedness certificate: the ray keeps feasibility and
// strictly improves the objective.
inline bool valid_ray(const LinearProgram& lp,
                      const std::vector<std::pair<int, Rat>>& ray) {
  std::vector<Rat> d(lp.num_vars(), Rat(0));
  for (const auto& [v, k] : ray) d[v] += k;
  for (const Rat& v : d)
    if (sgn(v) < 0) return false;
  for (const auto& row : lp.rows()) {
    Rat lhs(0);
    for (const auto& [v, k] : row.terms) lhs += k * d[v];
    switch (row.rel) {
      case Rel::Eq:
        if (sgn(lhs) != 0) return false;
        break;
      case Rel::Ge:
        if (sgn(lhs) < 0) return false;
        break;
      case Rel::Le:
        if (sgn(lhs) > 0) return false;
        break;
    }
  }
  Rat obj(0);
  for (const auto& [v, k] : lp.objective()) obj += k * d[v];
  return sgn(obj) < 0;
}

}  // namespace praml::testing
