#include "praml/potential.hpp"

#include "praml/diag.hpp"

namespace praml {

bool value_fits(const Value& v, const AnnType& t) {
  switch (t.kind) {
    case TyKind::Unit:
      return v.kind == ValKind::Unit;
    case TyKind::Int:
      return v.kind == ValKind::Int;
    case TyKind::Bool:
      return v.kind == ValKind::Bool;
    case TyKind::Prob:
      return v.kind == ValKind::Prob;
    case TyKind::Arrow:
      return v.kind == ValKind::Closure;
    case TyKind::List: {
      const Value* cur = &v;
      while (cur->kind == ValKind::Cons) {
        if (!value_fits(*cur->head, *t.elem)) return false;
        cur = cur->tail.get();
      }
      return cur->kind == ValKind::Nil;
    }
  }
  return false;
}

Rat phi(const Value& v, const AnnType& t) {
  if (!value_fits(v, t))
    throw TypeError(Span{}, "value " + show(v) + " does not inhabit " + show(t));
  switch (t.kind) {
    case TyKind::Unit:
    case TyKind::Int:
    case TyKind::Bool:
    case TyKind::Arrow:
      return Rat(0);
    case TyKind::Prob: {
      Rat r = t.qh.value() * v.prob + t.qt.value() * (Rat(1) - v.prob);
      return r;
    }
    case TyKind::List: {
      Rat sum(0);
      const Value* cur = &v;
      while (cur->kind == ValKind::Cons) {
        sum += t.per_elem.value() + phi(*cur->head, *t.elem);
        cur = cur->tail.get();
      }
      return sum;
    }
  }
  return Rat(0);
}

Rat phi(const Value& v, const PotAnn& a) { return phi(v, *a.ty) + a.q.value(); }

Rat phi_env(const Env& env, const TypingContext& ctx) {
  Rat sum(0);
  for (const auto& [name, ty] : ctx) {
    ValuePtr v = env_lookup(env, name);
    if (!v) throw TypeError(Span{}, "environment misses binding '" + name + "'");
    sum += phi(*v, *ty);
  }
  return sum;
}

std::pair<AnnTypePtr, AnnTypePtr> share_type(const AnnTypePtr& t,
                                             VarRegistry& reg,
                                             ConstraintSet& cs,
                                             const std::string& tag,
                                             Span span) {
  switch (t->kind) {
    case TyKind::Unit:
    case TyKind::Int:
    case TyKind::Bool:
    case TyKind::Arrow:
      // Sh:Unit / Sh:Arrow: arrows carry no potential and are duplicated.
      return {t, t};
    case TyKind::Prob: {
      Anno h1 = reg.fresh_anno("qh'");
      Anno h2 = reg.fresh_anno("qh''");
      Anno t1 = reg.fresh_anno("qt'");
      Anno t2 = reg.fresh_anno("qt''");
      cs.add(LinExpr(t->qh), Rel::Eq, LinExpr(h1) + LinExpr(h2), tag, span);
      cs.add(LinExpr(t->qt), Rel::Eq, LinExpr(t1) + LinExpr(t2), tag, span);
      return {AnnType::prob(h1, t1), AnnType::prob(h2, t2)};
    }
    case TyKind::List: {
      auto [e1, e2] = share_type(t->elem, reg, cs, tag, span);
      Anno p1 = reg.fresh_anno("p'");
      Anno p2 = reg.fresh_anno("p''");
      cs.add(LinExpr(t->per_elem), Rel::Eq, LinExpr(p1) + LinExpr(p2), tag,
             span);
      return {AnnType::list(e1, p1), AnnType::list(e2, p2)};
    }
  }
  return {t, t};
}

AnnTypePtr scale_type(const Rat& p, const AnnTypePtr& t) {
  auto scale = [&](const Anno& a) {
    if (a.is_var())
      throw TypeError(Span{}, "cannot scale a symbolic annotation");
    return Anno(Rat(p * a.c));
  };
  switch (t->kind) {
    case TyKind::Unit:
    case TyKind::Int:
    case TyKind::Bool:
    case TyKind::Arrow:
      return t;
    case TyKind::Prob:
      return AnnType::prob(scale(t->qh), scale(t->qt));
    case TyKind::List:
      return AnnType::list(scale_type(p, t->elem), scale(t->per_elem));
  }
  return t;
}

AnnTypePtr zero_type(const AnnTypePtr& t) {
  switch (t->kind) {
    case TyKind::Unit:
    case TyKind::Int:
    case TyKind::Bool:
    case TyKind::Arrow:
      return t;
    case TyKind::Prob:
      return AnnType::prob(Anno(Rat(0)), Anno(Rat(0)));
    case TyKind::List:
      return AnnType::list(zero_type(t->elem), Anno(Rat(0)));
  }
  return t;
}

AnnTypePtr add_types(const AnnTypePtr& a, const AnnTypePtr& b) {
  if (a->kind != b->kind)
    throw TypeError(Span{}, "shape mismatch in annotation sum");
  auto add = [](const Anno& x, const Anno& y) {
    return Anno(Rat(x.value() + y.value()));
  };
  switch (a->kind) {
    case TyKind::Unit:
    case TyKind::Int:
    case TyKind::Bool:
    case TyKind::Arrow:
      return a;
    case TyKind::Prob:
      return AnnType::prob(add(a->qh, b->qh), add(a->qt, b->qt));
    case TyKind::List:
      return AnnType::list(add_types(a->elem, b->elem),
                           add(a->per_elem, b->per_elem));
  }
  return a;
}

bool subtype_constraints(const AnnTypePtr& t1, const AnnTypePtr& t2,
                         VarRegistry& reg, ConstraintSet& cs,
                         const std::string& tag, Span span) {
  if (t1->kind != t2->kind) return false;
  switch (t1->kind) {
    case TyKind::Unit:
    case TyKind::Int:
    case TyKind::Bool:
      return true;
    case TyKind::Prob:
      cs.add(LinExpr(t1->qh), Rel::Ge, LinExpr(t2->qh), tag, span);
      cs.add(LinExpr(t1->qt), Rel::Ge, LinExpr(t2->qt), tag, span);
      return true;
    case TyKind::List:
      cs.add(LinExpr(t1->per_elem), Rel::Ge, LinExpr(t2->per_elem), tag, span);
      return subtype_constraints(t1->elem, t2->elem, reg, cs, tag, span);
    case TyKind::Arrow:
      // Contravariant argument, covariant result.
      return subtype_constraints(t2->arg, t1->arg, reg, cs, tag, span) &&
             subtype_constraints(t1->res, t2->res, reg, cs, tag, span);
  }
  return false;
}

bool subtype_constraints(const PotAnn& a1, const PotAnn& a2, VarRegistry& reg,
                         ConstraintSet& cs, const std::string& tag, Span span) {
  cs.add(LinExpr(a1.q), Rel::Ge, LinExpr(a2.q), tag, span);
  return subtype_constraints(a1.ty, a2.ty, reg, cs, tag, span);
}

bool subtype_holds(const AnnTypePtr& t1, const AnnTypePtr& t2) {
  VarRegistry reg;
  ConstraintSet cs;
  if (!subtype_constraints(t1, t2, reg, cs, "sub", Span{})) return false;
  return all_satisfied(cs, {});
}

}  // namespace praml
