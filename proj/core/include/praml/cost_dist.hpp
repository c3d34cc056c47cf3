#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "praml/rational.hpp"
#include "praml/value.hpp"

namespace praml {

// Cost in Q>=0 extended with +infinity. The evaluators never produce the
// infinite cost; it exists so the expected-cost functional has the right
// codomain.
struct ExtCost {
  bool inf = false;
  Rat q;

  static ExtCost infinite() { return ExtCost{true, Rat(0)}; }
  static ExtCost finite(Rat v) { return ExtCost{false, std::move(v)}; }
};

int compare(const ExtCost& a, const ExtCost& b);

// An outcome is a value or the divergence token (null pointer).
struct Outcome {
  ValuePtr v;  // null: divergence

  bool diverged() const { return v == nullptr; }
};

int compare(const Outcome& a, const Outcome& b);

// Finite map (outcome, cost) -> probability. Stored entries are strictly
// positive. Sub-probability distributions never contain the divergence
// token; full distributions have mass exactly 1 and may.
class CostDist {
 public:
  struct Key {
    Outcome out;
    ExtCost cost;
    bool operator<(const Key& o) const {
      if (int c = compare(out, o.out)) return c < 0;
      return compare(cost, o.cost) < 0;
    }
  };
  using Map = std::map<Key, Rat>;

  static CostDist zero() { return CostDist(); }
  static CostDist point(ValuePtr v, Rat cost) {
    CostDist d;
    d.add(Outcome{std::move(v)}, ExtCost::finite(std::move(cost)), Rat(1));
    return d;
  }
  static CostDist point_diverge(Rat cost) {
    CostDist d;
    d.add(Outcome{nullptr}, ExtCost::finite(std::move(cost)), Rat(1));
    return d;
  }

  void add(Outcome out, ExtCost cost, Rat p);
  void add_scaled(const CostDist& other, const Rat& factor);

  Rat mass() const;
  Rat diverging_mass() const;
  bool empty() const { return m_.empty(); }
  std::size_t support_size() const { return m_.size(); }

  // Drops divergence entries (full -> sub restriction).
  CostDist restrict_to_values() const;

  // Sum of p * q over all entries (divergence included); nullopt on any
  // positive-mass infinite cost.
  std::optional<Rat> expected_cost() const;

  const Map& entries() const { return m_; }

  bool operator==(const CostDist& o) const;

 private:
  Map m_;
};

// mu1 <= mu2 pointwise (sub-probability order).
bool leq_pointwise(const CostDist& a, const CostDist& b);

// The square-image order on full distributions: non-divergent entries
// pointwise <=, and the cumulative mass up to every cost threshold is
// >= on the left. Thresholds are every cost occurring in either
// distribution plus infinity.
bool sq_leq(const CostDist& a, const CostDist& b);

}  // namespace praml
