#include "praml/constraints.hpp"

#include <algorithm>
#include <map>

namespace praml {

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  for (const auto& t : o.terms) terms.push_back(t);
  c += o.c;
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
  for (const auto& [v, k] : o.terms) terms.emplace_back(v, Rat(-k));
  c -= o.c;
  return *this;
}

LinExpr& LinExpr::operator*=(const Rat& k) {
  for (auto& t : terms) t.second *= k;
  c *= k;
  return *this;
}

void LinExpr::normalize() {
  std::map<int, Rat> acc;
  for (const auto& [v, k] : terms) acc[v] += k;
  terms.clear();
  for (auto& [v, k] : acc)
    if (sgn(k) != 0) terms.emplace_back(v, k);
}

int VarRegistry::fresh(std::string hint) {
  names_.push_back(std::move(hint));
  return static_cast<int>(names_.size()) - 1;
}

void ConstraintSet::add(const LinExpr& lhs, Rel rel, const LinExpr& rhs,
                        std::string tag, Span span) {
  LinExpr d = lhs;
  d -= rhs;
  d.normalize();
  Constraint row;
  row.terms = std::move(d.terms);
  row.rel = rel;
  row.rhs = -d.c;
  row.tag = std::move(tag);
  row.span = span;
  rows.push_back(std::move(row));
}

bool satisfied(const Constraint& row, const std::vector<Rat>& assignment) {
  Rat lhs(0);
  for (const auto& [v, k] : row.terms) {
    Rat x = static_cast<std::size_t>(v) < assignment.size() ? assignment[v]
                                                            : Rat(0);
    lhs += k * x;
  }
  switch (row.rel) {
    case Rel::Eq:
      return lhs == row.rhs;
    case Rel::Ge:
      return lhs >= row.rhs;
    case Rel::Le:
      return lhs <= row.rhs;
  }
  return false;
}

bool all_satisfied(const ConstraintSet& cs, const std::vector<Rat>& assignment,
                   std::string* first_violation) {
  for (const auto& row : cs.rows) {
    if (!satisfied(row, assignment)) {
      if (first_violation)
        *first_violation = row.tag + " at " + row.span.str();
      return false;
    }
  }
  return true;
}

}  // namespace praml
