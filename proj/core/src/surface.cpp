#include "praml/surface.hpp"

namespace praml {

SurfPtr make_surface(SurfKind kind, Span span) {
  auto e = std::make_unique<SurfaceExpr>();
  e->kind = kind;
  e->span = span;
  return e;
}

SurfPtr clone(const SurfaceExpr& e) {
  auto c = std::make_unique<SurfaceExpr>();
  c->kind = e.kind;
  c->span = e.span;
  c->name = e.name;
  c->bind1 = e.bind1;
  c->bind2 = e.bind2;
  c->lit = e.lit;
  c->ival = e.ival;
  c->bval = e.bval;
  c->op = e.op;
  c->ctype = e.ctype;
  c->params = e.params;
  for (const auto& k : e.kids) c->kids.push_back(clone(*k));
  return c;
}

bool equal(const SurfaceExpr& a, const SurfaceExpr& b) {
  if (a.kind != b.kind || a.name != b.name || a.bind1 != b.bind1 ||
      a.bind2 != b.bind2 || a.lit != b.lit || a.ival != b.ival ||
      a.bval != b.bval || a.op != b.op || a.params != b.params)
    return false;
  if ((a.ctype.ty == nullptr) != (b.ctype.ty == nullptr)) return false;
  if (a.ctype.ty && !(equal(*a.ctype.ty, *b.ctype.ty) &&
                      equal(a.ctype.q, b.ctype.q)))
    return false;
  if (a.kids.size() != b.kids.size()) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!equal(*a.kids[i], *b.kids[i])) return false;
  return true;
}

}  // namespace praml
