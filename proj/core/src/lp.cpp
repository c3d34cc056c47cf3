#include "praml/lp.hpp"

#include <algorithm>

#include "praml/diag.hpp"

namespace praml {

namespace {

constexpr unsigned long long kPivotCeiling = 1'000'000;

struct Tableau {
  int cols = 0;
  std::vector<std::vector<Rat>> a;  // m x cols
  std::vector<Rat> b;               // m, kept >= 0
  std::vector<int> basis;           // m

  int rows() const { return static_cast<int>(b.size()); }
};

void pivot(Tableau& t, int r, int c) {
  Rat piv = t.a[r][c];
  for (Rat& x : t.a[r]) x /= piv;
  t.b[r] /= piv;
  for (int i = 0; i < t.rows(); ++i) {
    if (i == r) continue;
    Rat f = t.a[i][c];
    if (sgn(f) == 0) continue;
    for (int j = 0; j < t.cols; ++j) t.a[i][j] -= f * t.a[r][j];
    t.b[i] -= f * t.b[r];
  }
  t.basis[r] = c;
}

// Minimizes cost over the tableau with Bland's rule. Returns false when
// unbounded (ray_col set to the entering column).
bool simplex(Tableau& t, const std::vector<Rat>& cost,
             unsigned long long& pivots, int* ray_col = nullptr) {
  const int m = t.rows();
  while (true) {
    // Reduced costs: c_j - sum_i cost[basis_i] * a[i][j].
    int entering = -1;
    for (int j = 0; j < t.cols && entering < 0; ++j) {
      Rat red = cost[j];
      for (int i = 0; i < m; ++i) {
        if (sgn(t.a[i][j]) == 0) continue;
        red -= cost[t.basis[i]] * t.a[i][j];
      }
      if (sgn(red) < 0) entering = j;
    }
    if (entering < 0) return true;

    int leaving = -1;
    Rat best(0);
    for (int i = 0; i < m; ++i) {
      if (sgn(t.a[i][entering]) <= 0) continue;
      Rat ratio = t.b[i] / t.a[i][entering];
      if (leaving < 0 || ratio < best ||
          (ratio == best && t.basis[i] < t.basis[leaving])) {
        leaving = i;
        best = ratio;
      }
    }
    if (leaving < 0) {
      if (ray_col) *ray_col = entering;
      return false;
    }
    if (++pivots > kPivotCeiling)
      throw Error("lp error", Span{}, "pivot ceiling exceeded");
    pivot(t, leaving, entering);
  }
}

struct Prepared {
  Tableau t;
  int num_artificials = 0;
  int first_artificial = 0;
};

// Builds the phase-1 tableau: slacks for <=, surplus+artificial for >=,
// artificial for =; right-hand sides normalized nonnegative.
Prepared prepare(const std::vector<Constraint>& rows, int n,
                 const std::vector<std::size_t>* active) {
  std::vector<std::size_t> idx;
  if (active)
    idx = *active;
  else {
    idx.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) idx[i] = i;
  }

  int m = static_cast<int>(idx.size());
  int slacks = 0;
  for (std::size_t i : idx)
    if (rows[i].rel != Rel::Eq) ++slacks;

  Prepared p;
  Tableau& t = p.t;
  t.cols = n + slacks;  // artificials appended below
  t.a.assign(m, std::vector<Rat>(n + slacks, Rat(0)));
  t.b.assign(m, Rat(0));
  t.basis.assign(m, -1);

  int next_slack = n;
  std::vector<int> needs_artificial;
  for (int r = 0; r < m; ++r) {
    const Constraint& row = rows[idx[r]];
    bool flip = sgn(row.rhs) < 0;
    Rat s(flip ? -1 : 1);
    for (const auto& [v, k] : row.terms) t.a[r][v] += k * s;
    t.b[r] = row.rhs * s;
    Rel rel = row.rel;
    if (flip) rel = rel == Rel::Ge ? Rel::Le : rel == Rel::Le ? Rel::Ge : Rel::Eq;
    switch (rel) {
      case Rel::Le:
        t.a[r][next_slack] = 1;
        t.basis[r] = next_slack++;
        break;
      case Rel::Ge:
        t.a[r][next_slack] = -1;
        ++next_slack;
        needs_artificial.push_back(r);
        break;
      case Rel::Eq:
        needs_artificial.push_back(r);
        break;
    }
  }

  p.first_artificial = t.cols;
  p.num_artificials = static_cast<int>(needs_artificial.size());
  t.cols += p.num_artificials;
  for (auto& rowvec : t.a) rowvec.resize(t.cols, Rat(0));
  int next_art = p.first_artificial;
  for (int r : needs_artificial) {
    t.a[r][next_art] = 1;
    t.basis[r] = next_art++;
  }
  return p;
}

// Phase 1. Returns false on infeasibility. On success artificials are
// out of the basis (redundant rows dropped) and columns truncated.
bool phase1(Prepared& p, unsigned long long& pivots) {
  Tableau& t = p.t;
  if (p.num_artificials > 0) {
    std::vector<Rat> cost(t.cols, Rat(0));
    for (int j = p.first_artificial; j < t.cols; ++j) cost[j] = 1;
    simplex(t, cost, pivots);  // bounded below by 0
    Rat value(0);
    for (int i = 0; i < t.rows(); ++i)
      if (t.basis[i] >= p.first_artificial) value += t.b[i];
    if (sgn(value) > 0) return false;
    // Drive basic artificials out or drop redundant rows.
    for (int i = t.rows() - 1; i >= 0; --i) {
      if (t.basis[i] < p.first_artificial) continue;
      int piv_col = -1;
      for (int j = 0; j < p.first_artificial && piv_col < 0; ++j)
        if (sgn(t.a[i][j]) != 0) piv_col = j;
      if (piv_col >= 0) {
        pivot(t, i, piv_col);
      } else {
        t.a.erase(t.a.begin() + i);
        t.b.erase(t.b.begin() + i);
        t.basis.erase(t.basis.begin() + i);
      }
    }
  }
  t.cols = p.first_artificial;
  for (auto& rowvec : t.a) rowvec.resize(t.cols);
  return true;
}

}  // namespace

LinearProgram LinearProgram::from(const ConstraintSet& cs,
                                  const VarRegistry& reg) {
  std::vector<std::string> names;
  names.reserve(reg.size());
  for (int i = 0; i < reg.size(); ++i) names.push_back(reg.name(i));
  LinearProgram lp(reg.size(), std::move(names));
  for (const auto& row : cs.rows) lp.add_row(row);
  return lp;
}

const std::string& LinearProgram::var_name(int v) const {
  static const std::string fallback = "v?";
  if (v < 0 || static_cast<std::size_t>(v) >= names_.size()) return fallback;
  return names_[v];
}

void LinearProgram::add_row(Constraint row) {
  for (const auto& [v, k] : row.terms)
    if (v < 0 || v >= num_vars_)
      throw Error("lp error", row.span, "row references unregistered variable");
  rows_.push_back(std::move(row));
}

void LinearProgram::set_objective(std::vector<std::pair<int, Rat>> terms) {
  for (const auto& [v, k] : terms)
    if (v < 0 || v >= num_vars_)
      throw Error("lp error", Span{}, "objective references unregistered variable");
  objective_ = std::move(terms);
}

bool LinearProgram::feasible_subset(
    const std::vector<std::size_t>& active) const {
  // Constant rows (no variables) are checked directly.
  std::vector<std::size_t> nontrivial;
  for (std::size_t i : active) {
    const Constraint& row = rows_[i];
    if (!row.terms.empty()) {
      nontrivial.push_back(i);
      continue;
    }
    bool ok = row.rel == Rel::Eq   ? sgn(row.rhs) == 0
              : row.rel == Rel::Ge ? sgn(row.rhs) <= 0
                                   : sgn(row.rhs) >= 0;
    if (!ok) return false;
  }
  Prepared p = prepare(rows_, num_vars_, &nontrivial);
  unsigned long long pivots = 0;
  return phase1(p, pivots);
}

LpResult LinearProgram::solve(bool want_core) const {
  LpResult res;

  // Constant rows short-circuit.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Constraint& row = rows_[i];
    if (!row.terms.empty()) continue;
    bool ok = row.rel == Rel::Eq   ? sgn(row.rhs) == 0
              : row.rel == Rel::Ge ? sgn(row.rhs) <= 0
                                   : sgn(row.rhs) >= 0;
    if (!ok) {
      res.status = LpStatus::Infeasible;
      res.infeasible_core = {i};
      return res;
    }
  }

  Prepared p = prepare(rows_, num_vars_, nullptr);
  unsigned long long pivots = 0;
  if (!phase1(p, pivots)) {
    res.status = LpStatus::Infeasible;
    if (want_core) {
      // Deletion filter: drop rows whose removal keeps the system
      // infeasible; what remains is irreducible.
      std::vector<std::size_t> core;
      for (std::size_t i = 0; i < rows_.size(); ++i) core.push_back(i);
      for (std::size_t i = 0; i < core.size();) {
        std::vector<std::size_t> trial = core;
        trial.erase(trial.begin() + i);
        if (!feasible_subset(trial))
          core = std::move(trial);
        else
          ++i;
      }
      res.infeasible_core = std::move(core);
    }
    return res;
  }

  Tableau& t = p.t;
  std::vector<Rat> cost(t.cols, Rat(0));
  for (const auto& [v, k] : objective_) cost[v] += k;
  int ray_col = -1;
  if (!simplex(t, cost, pivots, &ray_col)) {
    res.status = LpStatus::Unbounded;
    res.ray.emplace_back(ray_col, Rat(1));
    for (int i = 0; i < t.rows(); ++i) {
      if (t.basis[i] < num_vars_ && sgn(t.a[i][ray_col]) != 0)
        res.ray.emplace_back(t.basis[i], Rat(-t.a[i][ray_col]));
    }
    // Only original variables are meaningful in the report.
    std::erase_if(res.ray, [&](const auto& pr) { return pr.first >= num_vars_; });
    return res;
  }

  res.status = LpStatus::Optimal;
  res.assignment.assign(num_vars_, Rat(0));
  for (int i = 0; i < t.rows(); ++i)
    if (t.basis[i] < num_vars_) res.assignment[t.basis[i]] = t.b[i];
  res.objective = 0;
  for (const auto& [v, k] : objective_) res.objective += k * res.assignment[v];
  return res;
}

LpResult solve_lexicographic(
    LinearProgram lp,
    const std::vector<std::vector<std::pair<int, Rat>>>& phases,
    bool want_core) {
  LpResult last;
  bool first = true;
  for (const auto& phase : phases) {
    lp.set_objective(phase);
    last = lp.solve(want_core && first);
    if (last.status != LpStatus::Optimal) return last;
    first = false;
    // Pin this phase's optimum.
    Constraint pin;
    pin.terms = phase;
    pin.rel = Rel::Eq;
    pin.rhs = last.objective;
    pin.tag = "objective:pin";
    lp.add_row(std::move(pin));
  }
  return last;
}

}  // namespace praml
