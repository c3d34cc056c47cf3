#pragma once

#include <optional>
#include <string>
#include <vector>

#include "praml/cost_dist.hpp"
#include "praml/core_expr.hpp"
#include "praml/value.hpp"

namespace praml {

// Coin-flip outcomes; true is heads.
using Trace = std::vector<bool>;

std::string trace_to_string(const Trace& t);
std::optional<Trace> trace_from_string(const std::string& s);

// One terminating execution: probability equals the product over the
// trace of p (heads) or 1-p (tails) at the flips taken.
struct RunResult {
  ValuePtr value;
  Rat cost;
  Rat prob;
  Trace trace;
};

struct EvalLimits {
  unsigned long long step_budget = 1'000'000;
  int depth_cap = 60'000;
};

enum class ReplayStatus { Ok, TraceTooShort, TraceTooLong, Budget };

struct ReplayOutcome {
  ReplayStatus status = ReplayStatus::Ok;
  std::optional<RunResult> result;

  bool ok() const { return status == ReplayStatus::Ok; }
};

// Deterministic replay of a flip trace. The trace must be consumed
// exactly; budget exhaustion reports a possibly-divergent run.
ReplayOutcome replay(const Env& env, const CoreExpr& e, const Trace& trace,
                     const EvalLimits& limits = {});

struct SampleOutcome {
  bool budget_exhausted = false;
  std::optional<RunResult> result;
};

// Seeded Monte Carlo run; flips are exact Bernoulli draws (bitwise
// comparison against the binary expansion of p), so identical seeds give
// identical results.
SampleOutcome sample(const Env& env, const CoreExpr& e,
                     unsigned long long seed, const EvalLimits& limits = {});

// Exhaustive enumeration of all traces of length <= max_trace_len that
// terminate within the step budget; the terminating-execution
// distribution truncated at that trace bound. Throws EvalError if the
// step budget is exhausted (flip-free divergence).
CostDist enumerate(const Env& env, const CoreExpr& e, int max_trace_len,
                   const EvalLimits& limits = {});

// Observer for conditional sites during deterministic runs.
// enclosing_list_len is the length of the innermost dynamically enclosing
// list-match scrutinee, or -1.
struct CondObserver {
  virtual ~CondObserver() = default;
  virtual void observe(int site, bool taken, long enclosing_list_len) = 0;
};

struct DetRun {
  ValuePtr value;
  Rat cost;
};

// Runs a deterministic program (flip/prob/symbolic flip are rejected with
// an EvalError) and reports every conditional decision to the observer.
DetRun run_deterministic(const Env& env, const CoreExpr& e,
                         CondObserver* observer,
                         const EvalLimits& limits = {});

}  // namespace praml
