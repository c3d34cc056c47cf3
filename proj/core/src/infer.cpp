#include "praml/infer.hpp"

#include "praml/diag.hpp"
#include "praml/potential.hpp"

namespace praml {

AnnTypePtr annotate(const BaseType& t, VarRegistry& reg) {
  switch (t.kind) {
    case BaseKind::Unit:
    case BaseKind::Var:  // defaulted to unit upstream
      return AnnType::unit();
    case BaseKind::Int:
      return AnnType::tint();
    case BaseKind::Bool:
      return AnnType::tbool();
    case BaseKind::Prob:
      return AnnType::prob(reg.fresh_anno("qh"), reg.fresh_anno("qt"));
    case BaseKind::List:
      return AnnType::list(annotate(*t.a, reg), reg.fresh_anno("p"));
    case BaseKind::Arrow:
      return AnnType::arrow({annotate(*t.a, reg), reg.fresh_anno("qa")},
                            {annotate(*t.b, reg), reg.fresh_anno("qr")});
  }
  return AnnType::unit();
}

namespace {

struct Gen {
  VarRegistry reg;
  ConstraintSet cs;
  using Ctx = std::map<std::string, AnnTypePtr>;

  const AnnTypePtr& get(const Ctx& ctx, const std::string& n, Span span) {
    auto it = ctx.find(n);
    if (it == ctx.end())
      throw TypeError(span, "internal: context misses '" + n + "'");
    return it->second;
  }

  void require_sub(const AnnTypePtr& t1, const AnnTypePtr& t2, Span span) {
    if (!subtype_constraints(t1, t2, reg, cs, "L:Sub", span))
      throw TypeError(span, "internal: skeleton mismatch in subtyping");
  }

  // Scaled context split for probabilistic branching: fresh same-shape
  // types with slot = p*slot1 + (1-p)*slot2; arrows are duplicated.
  std::pair<AnnTypePtr, AnnTypePtr> split_scaled(const AnnTypePtr& t,
                                                 const Rat& p, Span span) {
    switch (t->kind) {
      case TyKind::Unit:
      case TyKind::Int:
      case TyKind::Bool:
      case TyKind::Arrow:
        return {t, t};
      case TyKind::Prob: {
        Anno h1 = reg.fresh_anno("qh'");
        Anno h2 = reg.fresh_anno("qh''");
        Anno t1 = reg.fresh_anno("qt'");
        Anno t2 = reg.fresh_anno("qt''");
        cs.add(LinExpr(t->qh), Rel::Eq,
               p * LinExpr(h1) + (Rat(1) - p) * LinExpr(h2), "L:Flip", span);
        cs.add(LinExpr(t->qt), Rel::Eq,
               p * LinExpr(t1) + (Rat(1) - p) * LinExpr(t2), "L:Flip", span);
        return {AnnType::prob(h1, t1), AnnType::prob(h2, t2)};
      }
      case TyKind::List: {
        auto [e1, e2] = split_scaled(t->elem, p, span);
        Anno p1 = reg.fresh_anno("p'");
        Anno p2 = reg.fresh_anno("p''");
        cs.add(LinExpr(t->per_elem), Rel::Eq,
               p * LinExpr(p1) + (Rat(1) - p) * LinExpr(p2), "L:Flip", span);
        return {AnnType::list(e1, p1), AnnType::list(e2, p2)};
      }
    }
    return {t, t};
  }

  void judge(const Ctx& ctx, const Anno& q, const CoreExpr& e,
             const PotAnn& a) {
    switch (e.kind) {
      case CoreKind::Var: {
        require_sub(get(ctx, e.var, e.span), a.ty, e.span);
        cs.add(LinExpr(q), Rel::Ge, LinExpr(a.q), "L:Var", e.span);
        return;
      }
      case CoreKind::Unit:
        cs.add(LinExpr(q), Rel::Ge, LinExpr(a.q), "L:Unit", e.span);
        return;
      case CoreKind::Nil:
        cs.add(LinExpr(q), Rel::Ge, LinExpr(a.q), "L:Nil", e.span);
        return;
      case CoreKind::IntLit:
        cs.add(LinExpr(q), Rel::Ge, LinExpr(a.q), "L:Int", e.span);
        return;
      case CoreKind::BoolLit:
        cs.add(LinExpr(q), Rel::Ge, LinExpr(a.q), "L:Bool", e.span);
        return;
      case CoreKind::Cmp:
        cs.add(LinExpr(q), Rel::Ge, LinExpr(a.q), "L:Cmp", e.span);
        return;
      case CoreKind::Tick:
        cs.add(LinExpr(q), Rel::Ge, LinExpr(e.lit) + LinExpr(a.q), "L:Tick",
               e.span);
        return;
      case CoreKind::Prob: {
        if (a.ty->kind != TyKind::Prob)
          throw TypeError(e.span, "internal: prob literal typed non-prob");
        LinExpr pot = e.lit * LinExpr(a.ty->qh) +
                      (Rat(1) - e.lit) * LinExpr(a.ty->qt);
        cs.add(LinExpr(q), Rel::Ge, pot + LinExpr(a.q), "L:Prob", e.span);
        return;
      }
      case CoreKind::Consume: {
        // The context annotation must dominate the written type; the
        // dynamic cost phi(v : <tau, k>) is paid from it plus k budget.
        require_sub(get(ctx, e.var, e.span), e.ctype.ty, e.span);
        cs.add(LinExpr(q), Rel::Ge, LinExpr(e.ctype.q) + LinExpr(a.q),
               "L:Consume", e.span);
        return;
      }
      case CoreKind::Cons: {
        if (a.ty->kind != TyKind::List)
          throw TypeError(e.span, "internal: cons typed non-list");
        require_sub(get(ctx, e.var, e.span), a.ty->elem, e.span);
        require_sub(get(ctx, e.var2, e.span), a.ty, e.span);
        cs.add(LinExpr(q), Rel::Ge, LinExpr(a.ty->per_elem) + LinExpr(a.q),
               "L:Cons", e.span);
        return;
      }
      case CoreKind::App: {
        const AnnTypePtr& f = get(ctx, e.var, e.span);
        if (f->kind != TyKind::Arrow)
          throw TypeError(e.span, "internal: applied non-arrow");
        require_sub(get(ctx, e.var2, e.span), f->arg.ty, e.span);
        require_sub(f->res.ty, a.ty, e.span);
        cs.add(LinExpr(q), Rel::Ge, LinExpr(f->arg.q), "L:App", e.span);
        cs.add(LinExpr(q) + LinExpr(f->res.q), Rel::Ge,
               LinExpr(f->arg.q) + LinExpr(a.q), "L:App", e.span);
        return;
      }
      case CoreKind::Fun: {
        if (a.ty->kind != TyKind::Arrow)
          throw TypeError(e.span, "internal: function typed non-arrow");
        cs.add(LinExpr(q), Rel::Ge, LinExpr(a.q), "L:Fun", e.span);
        Ctx inner;
        for (const auto& y : free_vars(e)) {
          // L:Fun: the captured context is zeroed; dropping to the zero
          // type is subtyping, so no constraints are emitted.
          inner[y] = zero_type(get(ctx, y, e.span));
        }
        inner[e.bind1] = a.ty;
        if (e.bind2 != "_") inner[e.bind2] = a.ty->arg.ty;
        judge(inner, a.ty->arg.q, *e.e0, a.ty->res);
        return;
      }
      case CoreKind::Let: {
        AnnTypePtr tx = annotate(*e.e0->btype, reg);
        Anno p = reg.fresh_anno("let.p");
        judge(ctx, q, *e.e0, PotAnn{tx, p});
        Ctx inner = ctx;
        if (e.bind1 != "_") inner[e.bind1] = tx;
        judge(inner, p, *e.e1, a);
        return;
      }
      case CoreKind::Share: {
        auto [t1, t2] = share_type(get(ctx, e.var, e.span), reg, cs,
                                   "L:Share", e.span);
        Ctx inner = ctx;
        inner.erase(e.var);
        inner[e.bind1] = t1;
        inner[e.bind2] = t2;
        judge(inner, q, *e.e0, a);
        return;
      }
      case CoreKind::MatL: {
        const AnnTypePtr& tl = get(ctx, e.var, e.span);
        if (tl->kind != TyKind::List)
          throw TypeError(e.span, "internal: matched non-list");
        Ctx nil_ctx = ctx;
        nil_ctx.erase(e.var);
        judge(nil_ctx, q, *e.e0, a);
        Ctx cons_ctx = nil_ctx;
        if (e.bind1 != "_") cons_ctx[e.bind1] = tl->elem;
        if (e.bind2 != "_") cons_ctx[e.bind2] = tl;
        Anno qc = reg.fresh_anno("match.q");
        cs.add(LinExpr(qc), Rel::Eq, LinExpr(q) + LinExpr(tl->per_elem),
               "L:MatL", e.span);
        judge(cons_ctx, qc, *e.e1, a);
        return;
      }
      case CoreKind::If: {
        Ctx inner = ctx;
        inner.erase(e.var);
        judge(inner, q, *e.e0, a);
        judge(inner, q, *e.e1, a);
        return;
      }
      case CoreKind::Flip: {
        const Rat& p = e.lit;
        auto fv0 = free_vars(*e.e0);
        auto fv1 = free_vars(*e.e1);
        Ctx ctx1 = ctx, ctx2 = ctx;
        for (const auto& [y, ty] : ctx) {
          if (!fv0.count(y) && !fv1.count(y)) continue;
          auto [ty1, ty2] = split_scaled(ty, p, e.span);
          ctx1[y] = ty1;
          ctx2[y] = ty2;
        }
        Anno q1 = reg.fresh_anno("flip.qh");
        Anno q2 = reg.fresh_anno("flip.qt");
        cs.add(LinExpr(q), Rel::Eq,
               p * LinExpr(q1) + (Rat(1) - p) * LinExpr(q2), "L:Flip", e.span);
        judge(ctx1, q1, *e.e0, a);
        judge(ctx2, q2, *e.e1, a);
        return;
      }
      case CoreKind::FlipSym: {
        const AnnTypePtr& tp = get(ctx, e.var, e.span);
        if (tp->kind != TyKind::Prob)
          throw TypeError(e.span, "internal: symbolic flip on non-prob");
        Ctx inner = ctx;
        inner.erase(e.var);
        Anno q1 = reg.fresh_anno("flips.qh");
        Anno q2 = reg.fresh_anno("flips.qt");
        cs.add(LinExpr(q1), Rel::Eq, LinExpr(q) + LinExpr(tp->qh), "L:FlipS",
               e.span);
        cs.add(LinExpr(q2), Rel::Eq, LinExpr(q) + LinExpr(tp->qt), "L:FlipS",
               e.span);
        judge(inner, q1, *e.e0, a);
        judge(inner, q2, *e.e1, a);
        return;
      }
    }
    throw TypeError(e.span, "malformed expression");
  }
};

}  // namespace

GenResult gen_constraints(const CoreExpr& typed_program) {
  if (!typed_program.btype)
    throw TypeError(typed_program.span, "base types not inferred");
  Gen g;
  GenResult result;
  PotAnn root{annotate(*typed_program.btype, g.reg), g.reg.fresh_anno("root.q")};
  Anno q0 = g.reg.fresh_anno("q0");
  g.judge({}, q0, typed_program, root);
  result.vars = std::move(g.reg);
  result.constraints = std::move(g.cs);
  result.root = root;
  result.q0 = q0;
  return result;
}

}  // namespace praml
