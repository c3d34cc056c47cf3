#include "praml/cost_dist.hpp"

#include <set>

namespace praml {

int compare(const ExtCost& a, const ExtCost& b) {
  if (a.inf != b.inf) return a.inf ? 1 : -1;
  if (a.inf) return 0;
  return cmp(a.q, b.q);
}

int compare(const Outcome& a, const Outcome& b) {
  if (a.diverged() != b.diverged()) return a.diverged() ? -1 : 1;
  if (a.diverged()) return 0;
  return compare(*a.v, *b.v);
}

void CostDist::add(Outcome out, ExtCost cost, Rat p) {
  if (sgn(p) == 0) return;
  Key k{std::move(out), std::move(cost)};
  auto it = m_.find(k);
  if (it == m_.end())
    m_.emplace(std::move(k), std::move(p));
  else {
    it->second += p;
    if (sgn(it->second) == 0) m_.erase(it);
  }
}

void CostDist::add_scaled(const CostDist& other, const Rat& factor) {
  if (sgn(factor) == 0) return;
  for (const auto& [k, p] : other.m_) {
    Rat scaled = p * factor;
    add(k.out, k.cost, scaled);
  }
}

Rat CostDist::mass() const {
  Rat s(0);
  for (const auto& [k, p] : m_) s += p;
  return s;
}

Rat CostDist::diverging_mass() const {
  Rat s(0);
  for (const auto& [k, p] : m_)
    if (k.out.diverged()) s += p;
  return s;
}

CostDist CostDist::restrict_to_values() const {
  CostDist d;
  for (const auto& [k, p] : m_)
    if (!k.out.diverged()) d.add(k.out, k.cost, p);
  return d;
}

std::optional<Rat> CostDist::expected_cost() const {
  Rat s(0);
  for (const auto& [k, p] : m_) {
    if (k.cost.inf) return std::nullopt;
    s += p * k.cost.q;
  }
  return s;
}

bool CostDist::operator==(const CostDist& o) const {
  if (m_.size() != o.m_.size()) return false;
  auto a = m_.begin();
  auto b = o.m_.begin();
  for (; a != m_.end(); ++a, ++b) {
    if (compare(a->first.out, b->first.out) != 0) return false;
    if (compare(a->first.cost, b->first.cost) != 0) return false;
    if (a->second != b->second) return false;
  }
  return true;
}

bool leq_pointwise(const CostDist& a, const CostDist& b) {
  for (const auto& [k, p] : a.entries()) {
    auto it = b.entries().find(k);
    Rat q = it == b.entries().end() ? Rat(0) : it->second;
    if (p > q) return false;
  }
  return true;
}

bool sq_leq(const CostDist& a, const CostDist& b) {
  // Non-divergent entries pointwise <=.
  for (const auto& [k, p] : a.entries()) {
    if (k.out.diverged()) continue;
    auto it = b.entries().find(k);
    Rat q = it == b.entries().end() ? Rat(0) : it->second;
    if (p > q) return false;
  }
  // Cumulative mass up to each finite threshold >= on the left; the
  // infinite threshold compares total mass.
  std::set<Rat> thresholds;
  for (const auto& [k, p] : a.entries())
    if (!k.cost.inf) thresholds.insert(k.cost.q);
  for (const auto& [k, p] : b.entries())
    if (!k.cost.inf) thresholds.insert(k.cost.q);
  for (const Rat& t : thresholds) {
    Rat ca(0), cb(0);
    for (const auto& [k, p] : a.entries())
      if (!k.cost.inf && k.cost.q <= t) ca += p;
    for (const auto& [k, p] : b.entries())
      if (!k.cost.inf && k.cost.q <= t) cb += p;
    if (ca < cb) return false;
  }
  if (a.mass() < b.mass()) return false;
  return true;
}

}  // namespace praml
