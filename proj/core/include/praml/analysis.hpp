#pragma once

#include <optional>
#include <string>
#include <vector>

#include "praml/bound.hpp"
#include "praml/infer.hpp"
#include "praml/lp.hpp"

namespace praml {

// End-to-end annotation inference for one program: constraint generation
// followed by lexicographic LP minimization (tails-slot sums first, then
// per-element, then heads, then constants, then slot-by-slot pinning of
// the reported template for a canonical solution).
struct Analysis {
  CorePtr core;
  BaseTypePtr base;
  GenResult gen;

  std::size_t num_constraints = 0;
  std::size_t num_vars = 0;
  double solve_seconds = 0;

  bool feasible = false;
  std::vector<Rat> solution;
  PotAnn solved_root;
  Rat q0;
  std::vector<PotAnn> solved_args;  // curried argument templates
  PotAnn solved_result;             // final (non-arrow) result
  BoundExpr bound;

  // On infeasibility: provenance of an irreducible infeasible subset.
  std::vector<std::string> infeasible_core;
};

Analysis analyze_core(CorePtr core, bool want_core_on_infeasible = true);
Analysis analyze_source(const std::string& source,
                        bool want_core_on_infeasible = true);

// The constraint system with a single weighted-sum objective that
// approximates the lexicographic phases (for --emit-lp).
LinearProgram analysis_lp(const Analysis& a);

// Re-checks a solved assignment against every emitted constraint in exact
// arithmetic (the concrete-annotation checker over the same rules).
bool verify_assignment(const Analysis& a, std::string* first_violation = nullptr);

}  // namespace praml
