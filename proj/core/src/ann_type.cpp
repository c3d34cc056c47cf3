#include "praml/ann_type.hpp"

#include <cassert>

namespace praml {

const Rat& Anno::value() const {
  assert(!is_var());
  return c;
}

AnnTypePtr AnnType::unit() {
  auto t = std::make_shared<AnnType>();
  t->kind = TyKind::Unit;
  return t;
}
AnnTypePtr AnnType::tint() {
  auto t = std::make_shared<AnnType>();
  t->kind = TyKind::Int;
  return t;
}
AnnTypePtr AnnType::tbool() {
  auto t = std::make_shared<AnnType>();
  t->kind = TyKind::Bool;
  return t;
}
AnnTypePtr AnnType::prob(Anno qh, Anno qt) {
  auto t = std::make_shared<AnnType>();
  t->kind = TyKind::Prob;
  t->qh = std::move(qh);
  t->qt = std::move(qt);
  return t;
}
AnnTypePtr AnnType::list(AnnTypePtr elem, Anno per_elem) {
  auto t = std::make_shared<AnnType>();
  t->kind = TyKind::List;
  t->elem = std::move(elem);
  t->per_elem = std::move(per_elem);
  return t;
}
AnnTypePtr AnnType::arrow(PotAnn arg, PotAnn res) {
  auto t = std::make_shared<AnnType>();
  t->kind = TyKind::Arrow;
  t->arg = std::move(arg);
  t->res = std::move(res);
  return t;
}

bool concrete(const AnnType& t) {
  switch (t.kind) {
    case TyKind::Unit:
    case TyKind::Int:
    case TyKind::Bool:
      return true;
    case TyKind::Prob:
      return !t.qh.is_var() && !t.qt.is_var();
    case TyKind::List:
      return !t.per_elem.is_var() && concrete(*t.elem);
    case TyKind::Arrow:
      return concrete(t.arg) && concrete(t.res);
  }
  return false;
}

bool concrete(const PotAnn& a) { return !a.q.is_var() && concrete(*a.ty); }

bool equal(const Anno& a, const Anno& b) {
  if (a.is_var() != b.is_var()) return false;
  return a.is_var() ? a.var == b.var : a.c == b.c;
}

bool equal(const AnnType& a, const AnnType& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TyKind::Unit:
    case TyKind::Int:
    case TyKind::Bool:
      return true;
    case TyKind::Prob:
      return equal(a.qh, b.qh) && equal(a.qt, b.qt);
    case TyKind::List:
      return equal(a.per_elem, b.per_elem) && equal(*a.elem, *b.elem);
    case TyKind::Arrow:
      return equal(a.arg.q, b.arg.q) && equal(a.res.q, b.res.q) &&
             equal(*a.arg.ty, *b.arg.ty) && equal(*a.res.ty, *b.res.ty);
  }
  return false;
}

std::string show(const Anno& a) {
  if (a.is_var()) return "$" + std::to_string(a.var);
  return to_string(a.c);
}

std::string show(const AnnType& t) {
  switch (t.kind) {
    case TyKind::Unit:
      return "unit";
    case TyKind::Int:
      return "int";
    case TyKind::Bool:
      return "bool";
    case TyKind::Prob:
      return "prob{" + show(t.qh) + "}{" + show(t.qt) + "}";
    case TyKind::List:
      return "L^" + show(t.per_elem) + "(" + show(*t.elem) + ")";
    case TyKind::Arrow:
      return show(t.arg) + " -> " + show(t.res);
  }
  return "?";
}

std::string show(const PotAnn& a) {
  return "<" + show(*a.ty) + ", " + show(a.q) + ">";
}

void collect_slots(const AnnType& t, std::vector<Slot>& out) {
  switch (t.kind) {
    case TyKind::Unit:
    case TyKind::Int:
    case TyKind::Bool:
      return;
    case TyKind::Prob:
      out.push_back({SlotKind::ProbH, t.qh});
      out.push_back({SlotKind::ProbT, t.qt});
      return;
    case TyKind::List:
      out.push_back({SlotKind::PerElem, t.per_elem});
      collect_slots(*t.elem, out);
      return;
    case TyKind::Arrow:
      collect_slots(t.arg, out);
      collect_slots(t.res, out);
      return;
  }
}

void collect_slots(const PotAnn& a, std::vector<Slot>& out) {
  out.push_back({SlotKind::Const, a.q});
  collect_slots(*a.ty, out);
}

static Anno subst(const Anno& a, const std::vector<Rat>& assignment) {
  if (!a.is_var()) return a;
  Anno r;
  if (static_cast<std::size_t>(a.var) < assignment.size())
    r.c = assignment[a.var];
  return r;
}

AnnTypePtr substitute(const AnnTypePtr& t, const std::vector<Rat>& assignment) {
  switch (t->kind) {
    case TyKind::Unit:
    case TyKind::Int:
    case TyKind::Bool:
      return t;
    case TyKind::Prob:
      return AnnType::prob(subst(t->qh, assignment), subst(t->qt, assignment));
    case TyKind::List:
      return AnnType::list(substitute(t->elem, assignment),
                           subst(t->per_elem, assignment));
    case TyKind::Arrow:
      return AnnType::arrow(substitute(t->arg, assignment),
                            substitute(t->res, assignment));
  }
  return t;
}

PotAnn substitute(const PotAnn& a, const std::vector<Rat>& assignment) {
  return {substitute(a.ty, assignment), subst(a.q, assignment)};
}

}  // namespace praml
