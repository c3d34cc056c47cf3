#pragma once

#include <optional>
#include <string>
#include <vector>

#include "praml/constraints.hpp"
#include "praml/rational.hpp"

namespace praml {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rat> assignment;  // per variable, on Optimal
  Rat objective;                // on Optimal
  // Row indices of an irreducible infeasible subset (when requested).
  std::vector<std::size_t> infeasible_core;
  // A feasible improving ray over the original variables (Unbounded).
  std::vector<std::pair<int, Rat>> ray;
};

// Exact-rational LP: minimize c.x subject to the rows, x >= 0 implicitly.
// Two-phase primal simplex with Bland's anti-cycling rule; a pivot
// ceiling (10^6) turns pathologies into a hard error.
class LinearProgram {
 public:
  LinearProgram(int num_vars, std::vector<std::string> names = {})
      : num_vars_(num_vars), names_(std::move(names)) {}

  static LinearProgram from(const ConstraintSet& cs, const VarRegistry& reg);

  int num_vars() const { return num_vars_; }
  const std::vector<Constraint>& rows() const { return rows_; }
  const std::vector<std::pair<int, Rat>>& objective() const {
    return objective_;
  }
  const std::string& var_name(int v) const;

  void add_row(Constraint row);
  void set_objective(std::vector<std::pair<int, Rat>> terms);

  // want_core: on infeasibility, run a deletion filter to produce an
  // irreducible infeasible subset (costs one feasibility solve per row).
  LpResult solve(bool want_core = false) const;

  // Feasibility of a subset of rows (used by the deletion filter and the
  // brute-force oracle in the tests).
  bool feasible_subset(const std::vector<std::size_t>& active) const;

 private:
  int num_vars_;
  std::vector<std::string> names_;
  std::vector<Constraint> rows_;
  std::vector<std::pair<int, Rat>> objective_;
};

// Sequentially minimizes each phase objective, pinning the previous
// optimum with an equality row. Returns the final result (Optimal carries
// the assignment of the last solve).
LpResult solve_lexicographic(LinearProgram lp,
                             const std::vector<std::vector<std::pair<int, Rat>>>& phases,
                             bool want_core = false);

}  // namespace praml
