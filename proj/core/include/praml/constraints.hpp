#pragma once

#include <string>
#include <vector>

#include "praml/ann_type.hpp"
#include "praml/diag.hpp"
#include "praml/rational.hpp"

namespace praml {

// Linear expression sum(coeff_i * x_i) + c over annotation variables.
struct LinExpr {
  std::vector<std::pair<int, Rat>> terms;
  Rat c;

  LinExpr() : c(0) {}
  /*implicit*/ LinExpr(Rat k) : c(std::move(k)) {}
  /*implicit*/ LinExpr(const Anno& a) : c(0) {
    if (a.is_var())
      terms.emplace_back(a.var, Rat(1));
    else
      c = a.c;
  }

  LinExpr& operator+=(const LinExpr& o);
  LinExpr& operator-=(const LinExpr& o);
  LinExpr& operator*=(const Rat& k);
  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(const Rat& k, LinExpr a) { return a *= k; }

  // Combines duplicate variables and drops zero coefficients.
  void normalize();
};

enum class Rel { Eq, Ge, Le };

// One row: sum(coeff_i * x_i) rel rhs, tagged with the typing rule and
// source span that produced it.
struct Constraint {
  std::vector<std::pair<int, Rat>> terms;
  Rel rel = Rel::Eq;
  Rat rhs;
  std::string tag;
  Span span;
};

class VarRegistry {
 public:
  int fresh(std::string hint);
  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int id) const { return names_[id]; }
  Anno fresh_anno(const std::string& hint) { return Anno::variable(fresh(hint)); }

 private:
  std::vector<std::string> names_;
};

struct ConstraintSet {
  std::vector<Constraint> rows;

  // lhs rel rhs; the row is normalized to terms rel constant.
  void add(const LinExpr& lhs, Rel rel, const LinExpr& rhs, std::string tag,
           Span span);
  std::size_t size() const { return rows.size(); }
};

// Exact check of one row / all rows under an assignment (indexed by var id;
// missing entries read 0).
bool satisfied(const Constraint& row, const std::vector<Rat>& assignment);
bool all_satisfied(const ConstraintSet& cs, const std::vector<Rat>& assignment,
                   std::string* first_violation = nullptr);

}  // namespace praml
