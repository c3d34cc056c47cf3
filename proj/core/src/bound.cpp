#include "praml/bound.hpp"

#include "praml/diag.hpp"

namespace praml {

bool equal(const BoundExpr& a, const BoundExpr& b) {
  if (a.constant != b.constant || a.terms.size() != b.terms.size())
    return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    const BoundTerm& x = a.terms[i];
    const BoundTerm& y = b.terms[i];
    if (x.arg != y.arg || x.depth != y.depth || x.kind != y.kind ||
        x.coeff != y.coeff)
      return false;
  }
  return true;
}

namespace {

void extract_type(const AnnType& t, int arg, int depth,
                  std::vector<BoundTerm>& out) {
  switch (t.kind) {
    case TyKind::Unit:
    case TyKind::Int:
    case TyKind::Bool:
    case TyKind::Arrow:  // function values carry no potential
      return;
    case TyKind::Prob:
      if (sgn(t.qh.value()) != 0)
        out.push_back({arg, depth, BoundTermKind::ProbH, t.qh.value()});
      if (sgn(t.qt.value()) != 0)
        out.push_back({arg, depth, BoundTermKind::ProbT, t.qt.value()});
      return;
    case TyKind::List:
      if (sgn(t.per_elem.value()) != 0)
        out.push_back({arg, depth, BoundTermKind::Length, t.per_elem.value()});
      extract_type(*t.elem, arg, depth + 1, out);
      return;
  }
}

// Sums the term's measure over the value, descending `depth` list levels.
Rat measure(const Value& v, int depth, BoundTermKind kind) {
  if (depth > 0) {
    if (v.kind == ValKind::Nil) return Rat(0);
    if (v.kind != ValKind::Cons)
      throw TypeError(Span{}, "bound term expects a list value");
    Rat sum(0);
    const Value* cur = &v;
    while (cur->kind == ValKind::Cons) {
      sum += measure(*cur->head, depth - 1, kind);
      cur = cur->tail.get();
    }
    return sum;
  }
  switch (kind) {
    case BoundTermKind::Length: {
      long n = list_length(v);
      if (n < 0) throw TypeError(Span{}, "bound term expects a list value");
      return Rat(n);
    }
    case BoundTermKind::ProbH:
      if (v.kind != ValKind::Prob)
        throw TypeError(Span{}, "bound term expects a probability value");
      return v.prob;
    case BoundTermKind::ProbT:
      if (v.kind != ValKind::Prob)
        throw TypeError(Span{}, "bound term expects a probability value");
      return Rat(Rat(1) - v.prob);
  }
  return Rat(0);
}

}  // namespace

BoundExpr extract_bound(const std::vector<PotAnn>& solved_args,
                        const Rat& extra_constant) {
  BoundExpr b;
  b.constant = extra_constant;
  for (std::size_t i = 0; i < solved_args.size(); ++i) {
    b.constant += solved_args[i].q.value();
    extract_type(*solved_args[i].ty, static_cast<int>(i), 0, b.terms);
  }
  return b;
}

Rat evaluate_bound(const BoundExpr& b, const std::vector<ValuePtr>& args) {
  Rat sum = b.constant;
  for (const BoundTerm& t : b.terms) {
    if (static_cast<std::size_t>(t.arg) >= args.size())
      throw TypeError(Span{}, "bound references a missing argument");
    sum += t.coeff * measure(*args[t.arg], t.depth, t.kind);
  }
  return sum;
}

std::string show(const BoundExpr& b, std::size_t num_args) {
  std::vector<std::string> parts;
  if (sgn(b.constant) != 0) parts.push_back(to_string(b.constant));
  for (const BoundTerm& t : b.terms) {
    std::string base = num_args > 1 ? "x" + std::to_string(t.arg + 1) : "l";
    std::string body;
    switch (t.kind) {
      case BoundTermKind::Length:
        body = t.depth == 0 ? "|" + base + "|" : "|" + base + "_i|";
        break;
      case BoundTermKind::ProbH:
        body = t.depth == 0 ? "p" : "p_i";
        break;
      case BoundTermKind::ProbT:
        body = t.depth == 0 ? "(1-p)" : "(1-p_i)";
        break;
    }
    std::string coeff = t.coeff == 1 ? "" : to_string(t.coeff) + "*";
    std::string term = coeff + body;
    if (t.depth > 0) term = "sum " + term;
    parts.push_back(term);
  }
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

}  // namespace praml
