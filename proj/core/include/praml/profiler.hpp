#pragma once

#include <map>
#include <optional>
#include <vector>

#include "praml/core_expr.hpp"
#include "praml/trace_interp.hpp"

namespace praml {

// Per conditional-site branch counts, keyed by the size feature: the
// length of the innermost dynamically enclosing list-match scrutinee
// (-1 when there is none).
struct SiteStats {
  long taken = 0;
  long total = 0;
  std::map<long, std::pair<long, long>> by_size;  // size -> (taken, total)
};

struct BranchStats {
  std::map<int, SiteStats> sites;
};

// Runs the (deterministic) program on each argument tuple and counts
// every dynamic conditional decision. Throws EvalError on probabilistic
// constructs or ill-typed inputs.
BranchStats profile(const CoreExpr& program,
                    const std::vector<std::vector<ValuePtr>>& corpus);

enum class Verdict { Constant, SizeDependent, Inconclusive };

struct Bucket {
  long size_lo = 0;
  long size_hi = 0;
  long taken = 0;
  long total = 0;
};

struct SiteReport {
  int site = 0;
  long taken = 0;
  long total = 0;
  Rat p_hat;
  Verdict verdict = Verdict::Inconclusive;
  double p_value = 1.0;
  std::vector<Bucket> buckets;
};

// Chi-square homogeneity across 4 equal-population size buckets; p-value
// >= alpha accepts the constant-probability hypothesis. Sites with fewer
// than two populated buckets (or no data) are inconclusive; sites whose
// branch never varies are constant.
std::map<int, SiteReport> independence_test(const BranchStats& stats,
                                            const Rat& alpha);

// Rewrites every reported-constant conditional site into a probabilistic
// branch with the empirical probability (optionally rounded to
// `round_digits` decimals). Refuses when any reported site is
// size-dependent. With drop_scrutinee, a let-binding that exists only to
// feed the rewritten conditional is removed.
CorePtr transform(const CoreExpr& program,
                  const std::map<int, SiteReport>& reports,
                  bool drop_scrutinee = false,
                  std::optional<int> round_digits = std::nullopt);

}  // namespace praml
