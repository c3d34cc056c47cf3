#pragma once

#include <optional>

#include "praml/cost_dist.hpp"
#include "praml/core_expr.hpp"
#include "praml/potential.hpp"
#include "praml/value.hpp"

namespace praml {

// Depth-indexed distribution semantics. At depth 0 the result is the zero
// distribution; compound forms evaluate their premises at depth-1. The
// result is the unique sub-probability distribution for (env, e, depth).
CostDist eval_dist(const Env& env, const CoreExpr& e, int depth);

// Partial-evaluation variant: a full probability distribution where the
// divergence token absorbs the missing mass (depth 0 gives the point
// distribution on (diverge, 0); lets propagate divergence with the cost
// accumulated so far).
CostDist eval_partial_dist(const Env& env, const CoreExpr& e, int depth);

// h(mu) = sum_q mu(div,q)*q + sum_{(v,q), v value} mu(v,q)*(phi(v:A)+q).
// nullopt encodes +infinity (positive mass at infinite cost).
std::optional<Rat> expected_h(const CostDist& full, const PotAnn& result_type);

}  // namespace praml
