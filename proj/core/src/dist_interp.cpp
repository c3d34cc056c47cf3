#include "praml/dist_interp.hpp"

#include "praml/diag.hpp"

namespace praml {

namespace {

// Shared closure construction with the trace evaluator (sorted pruned
// capture) so both semantics produce identical closure values.
ValuePtr dist_closure(const Env& env, const CoreExpr& fn) {
  auto fv = free_vars(fn);
  Env captured;
  for (auto it = fv.rbegin(); it != fv.rend(); ++it) {
    ValuePtr v = env_lookup(env, *it);
    if (v) captured = env_bind(captured, *it, std::move(v));
  }
  return v_closure(std::move(captured), fn.bind1, fn.bind2, &fn);
}

ValuePtr dist_lookup(const Env& env, const std::string& name, Span span) {
  ValuePtr v = env_lookup(env, name);
  if (!v) throw EvalError(span, "unbound variable '" + name + "'");
  return v;
}

// `partial` selects the full-distribution rules (PE:Base / PE:Let).
CostDist ev(const Env& env, const CoreExpr& e, int depth, bool partial) {
  if (depth <= 0)
    return partial ? CostDist::point_diverge(Rat(0)) : CostDist::zero();

  auto leaf = [&](ValuePtr v, Rat cost = Rat(0)) {
    return CostDist::point(std::move(v), std::move(cost));
  };

  switch (e.kind) {
    case CoreKind::Var:
      return leaf(dist_lookup(env, e.var, e.span));
    case CoreKind::Unit:
      return leaf(v_unit());
    case CoreKind::Nil:
      return leaf(v_nil());
    case CoreKind::IntLit:
      return leaf(v_int(e.ival));
    case CoreKind::BoolLit:
      return leaf(v_bool(e.bval));
    case CoreKind::Prob:
      return leaf(v_prob(e.lit));
    case CoreKind::Tick:
      return leaf(v_unit(), e.lit);
    case CoreKind::Consume: {
      ValuePtr v = dist_lookup(env, e.var, e.span);
      return leaf(v_unit(), phi(*v, e.ctype));
    }
    case CoreKind::Cons:
      return leaf(v_cons(dist_lookup(env, e.var, e.span),
                         dist_lookup(env, e.var2, e.span)));
    case CoreKind::Cmp: {
      ValuePtr a = dist_lookup(env, e.var, e.span);
      ValuePtr b = dist_lookup(env, e.var2, e.span);
      if (a->kind != ValKind::Int || b->kind != ValKind::Int)
        throw EvalError(e.span, "comparison requires integers");
      bool r = e.op == CmpOp::Lt   ? a->ival < b->ival
               : e.op == CmpOp::Gt ? a->ival > b->ival
                                   : a->ival == b->ival;
      return leaf(v_bool(r));
    }
    case CoreKind::Fun:
      return leaf(dist_closure(env, e));
    case CoreKind::App: {
      ValuePtr f = dist_lookup(env, e.var, e.span);
      if (f->kind != ValKind::Closure)
        throw EvalError(e.span, "application of a non-function");
      Env inner = env_bind(f->env, f->self, f);
      inner = env_bind(inner, f->param, dist_lookup(env, e.var2, e.span));
      return ev(inner, *f->body, depth - 1, partial);
    }
    case CoreKind::Share: {
      ValuePtr v = dist_lookup(env, e.var, e.span);
      Env inner = env_bind(env, e.bind1, v);
      inner = env_bind(inner, e.bind2, std::move(v));
      return ev(inner, *e.e0, depth - 1, partial);
    }
    case CoreKind::MatL: {
      ValuePtr s = dist_lookup(env, e.var, e.span);
      if (s->kind == ValKind::Nil) return ev(env, *e.e0, depth - 1, partial);
      if (s->kind != ValKind::Cons)
        throw EvalError(e.span, "match requires a list");
      Env inner = env_bind(env, e.bind1, s->head);
      inner = env_bind(inner, e.bind2, s->tail);
      return ev(inner, *e.e1, depth - 1, partial);
    }
    case CoreKind::If: {
      ValuePtr c = dist_lookup(env, e.var, e.span);
      if (c->kind != ValKind::Bool)
        throw EvalError(e.span, "condition must be a bool");
      return ev(env, c->bval ? *e.e0 : *e.e1, depth - 1, partial);
    }
    case CoreKind::Flip:
    case CoreKind::FlipSym: {
      Rat p = e.lit;
      if (e.kind == CoreKind::FlipSym) {
        ValuePtr pv = dist_lookup(env, e.var, e.span);
        if (pv->kind != ValKind::Prob)
          throw EvalError(e.span, "symbolic flip requires a probability value");
        p = pv->prob;
      }
      CostDist out;
      if (sgn(p) > 0) out.add_scaled(ev(env, *e.e0, depth - 1, partial), p);
      Rat np = Rat(1) - p;
      if (sgn(np) > 0) out.add_scaled(ev(env, *e.e1, depth - 1, partial), np);
      return out;
    }
    case CoreKind::Let: {
      CostDist mu1 = ev(env, *e.e0, depth - 1, partial);
      CostDist out;
      for (const auto& [k, p1] : mu1.entries()) {
        if (k.out.diverged()) {
          // PE:Let carries partial evaluations of e0 through, keeping
          // their cost.
          out.add(k.out, k.cost, p1);
          continue;
        }
        Env inner =
            e.bind1 == "_" ? env : env_bind(env, e.bind1, k.out.v);
        CostDist mu2 = ev(inner, *e.e1, depth - 1, partial);
        for (const auto& [k2, p2] : mu2.entries()) {
          ExtCost total = k.cost.inf || k2.cost.inf
                              ? ExtCost::infinite()
                              : ExtCost::finite(Rat(k.cost.q + k2.cost.q));
          out.add(k2.out, total, Rat(p1 * p2));
        }
      }
      return out;
    }
  }
  throw EvalError(e.span, "malformed expression");
}

}  // namespace

CostDist eval_dist(const Env& env, const CoreExpr& e, int depth) {
  return ev(env, e, depth, false);
}

CostDist eval_partial_dist(const Env& env, const CoreExpr& e, int depth) {
  return ev(env, e, depth, true);
}

std::optional<Rat> expected_h(const CostDist& full, const PotAnn& result_type) {
  Rat sum(0);
  for (const auto& [k, p] : full.entries()) {
    if (k.cost.inf) return std::nullopt;
    if (k.out.diverged())
      sum += p * k.cost.q;
    else
      sum += p * (phi(*k.out.v, result_type) + k.cost.q);
  }
  return sum;
}

}  // namespace praml
