#include "praml/base_types.hpp"

#include <map>
#include <vector>

#include "praml/diag.hpp"

namespace praml {

BaseTypePtr BaseType::make(BaseKind k, BaseTypePtr a, BaseTypePtr b) {
  auto t = std::make_shared<BaseType>();
  t->kind = k;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

BaseTypePtr BaseType::var(int id) {
  auto t = std::make_shared<BaseType>();
  t->kind = BaseKind::Var;
  t->tv = id;
  return t;
}

std::string show(const BaseType& t) {
  switch (t.kind) {
    case BaseKind::Unit:
      return "unit";
    case BaseKind::Int:
      return "int";
    case BaseKind::Bool:
      return "bool";
    case BaseKind::Prob:
      return "prob";
    case BaseKind::List:
      return "L(" + show(*t.a) + ")";
    case BaseKind::Arrow: {
      std::string lhs = show(*t.a);
      if (t.a->kind == BaseKind::Arrow) lhs = "(" + lhs + ")";
      return lhs + " -> " + show(*t.b);
    }
    case BaseKind::Var:
      return "'t" + std::to_string(t.tv);
  }
  return "?";
}

bool equal_base(const BaseType& a, const BaseType& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case BaseKind::List:
      return equal_base(*a.a, *b.a);
    case BaseKind::Arrow:
      return equal_base(*a.a, *b.a) && equal_base(*a.b, *b.b);
    case BaseKind::Var:
      return a.tv == b.tv;
    default:
      return true;
  }
}

namespace {

class Unifier {
 public:
  BaseTypePtr fresh() { return BaseType::var(next_id_++); }

  BaseTypePtr find(BaseTypePtr t) {
    while (t->kind == BaseKind::Var) {
      auto it = subst_.find(t->tv);
      if (it == subst_.end()) break;
      t = it->second;
    }
    return t;
  }

  bool occurs(int tv, const BaseTypePtr& t0) {
    BaseTypePtr t = find(t0);
    if (t->kind == BaseKind::Var) return t->tv == tv;
    if (t->a && occurs(tv, t->a)) return true;
    if (t->b && occurs(tv, t->b)) return true;
    return false;
  }

  void unify(BaseTypePtr x, BaseTypePtr y, Span span) {
    x = find(std::move(x));
    y = find(std::move(y));
    if (x->kind == BaseKind::Var && y->kind == BaseKind::Var &&
        x->tv == y->tv)
      return;
    if (x->kind == BaseKind::Var) {
      if (occurs(x->tv, y))
        throw TypeError(span, "cannot construct an infinite type");
      subst_[x->tv] = y;
      return;
    }
    if (y->kind == BaseKind::Var) {
      unify(y, x, span);
      return;
    }
    if (x->kind != y->kind)
      throw TypeError(span, "type mismatch: " + show(*x) + " vs " + show(*y));
    if (x->a) unify(x->a, y->a, span);
    if (x->b) unify(x->b, y->b, span);
  }

  // Fully resolves; leftover variables default to unit.
  BaseTypePtr resolve(BaseTypePtr t) {
    t = find(std::move(t));
    switch (t->kind) {
      case BaseKind::Var:
        return BaseType::make(BaseKind::Unit);
      case BaseKind::List:
        return BaseType::make(BaseKind::List, resolve(t->a));
      case BaseKind::Arrow:
        return BaseType::make(BaseKind::Arrow, resolve(t->a), resolve(t->b));
      default:
        return t;
    }
  }

 private:
  int next_id_ = 0;
  std::map<int, BaseTypePtr> subst_;
};

BaseTypePtr from_ann(const AnnType& t) {
  switch (t.kind) {
    case TyKind::Unit:
      return BaseType::make(BaseKind::Unit);
    case TyKind::Int:
      return BaseType::make(BaseKind::Int);
    case TyKind::Bool:
      return BaseType::make(BaseKind::Bool);
    case TyKind::Prob:
      return BaseType::make(BaseKind::Prob);
    case TyKind::List:
      return BaseType::make(BaseKind::List, from_ann(*t.elem));
    case TyKind::Arrow:
      return BaseType::make(BaseKind::Arrow, from_ann(*t.arg.ty),
                            from_ann(*t.res.ty));
  }
  return BaseType::make(BaseKind::Unit);
}

struct Inferencer {
  Unifier u;
  std::vector<std::pair<const CoreExpr*, BaseTypePtr>> nodes;

  BaseTypePtr infer(const CoreExpr& e, std::map<std::string, BaseTypePtr> ctx) {
    BaseTypePtr t = infer_raw(e, std::move(ctx));
    nodes.emplace_back(&e, t);
    return t;
  }

  BaseTypePtr lookup(const std::map<std::string, BaseTypePtr>& ctx,
                     const std::string& n, Span span) {
    auto it = ctx.find(n);
    if (it == ctx.end())
      throw TypeError(span, "unbound variable '" + n + "'");
    return it->second;
  }

  BaseTypePtr infer_raw(const CoreExpr& e,
                        std::map<std::string, BaseTypePtr> ctx) {
    switch (e.kind) {
      case CoreKind::Var:
        return lookup(ctx, e.var, e.span);
      case CoreKind::Unit:
        return BaseType::make(BaseKind::Unit);
      case CoreKind::Nil:
        return BaseType::make(BaseKind::List, u.fresh());
      case CoreKind::IntLit:
        return BaseType::make(BaseKind::Int);
      case CoreKind::BoolLit:
        return BaseType::make(BaseKind::Bool);
      case CoreKind::Prob:
        return BaseType::make(BaseKind::Prob);
      case CoreKind::Tick:
        return BaseType::make(BaseKind::Unit);
      case CoreKind::Consume: {
        auto tx = lookup(ctx, e.var, e.span);
        u.unify(tx, from_ann(*e.ctype.ty), e.span);
        return BaseType::make(BaseKind::Unit);
      }
      case CoreKind::Cons: {
        auto th = lookup(ctx, e.var, e.span);
        auto tt = lookup(ctx, e.var2, e.span);
        u.unify(tt, BaseType::make(BaseKind::List, th), e.span);
        return tt;
      }
      case CoreKind::Cmp: {
        u.unify(lookup(ctx, e.var, e.span), BaseType::make(BaseKind::Int),
                e.span);
        u.unify(lookup(ctx, e.var2, e.span), BaseType::make(BaseKind::Int),
                e.span);
        return BaseType::make(BaseKind::Bool);
      }
      case CoreKind::MatL: {
        auto elem = u.fresh();
        auto lst = BaseType::make(BaseKind::List, elem);
        u.unify(lookup(ctx, e.var, e.span), lst, e.span);
        auto t0 = infer(*e.e0, ctx);
        ctx[e.bind1] = elem;
        ctx[e.bind2] = lst;
        auto t1 = infer(*e.e1, ctx);
        u.unify(t0, t1, e.span);
        return t0;
      }
      case CoreKind::If: {
        u.unify(lookup(ctx, e.var, e.span), BaseType::make(BaseKind::Bool),
                e.span);
        auto t0 = infer(*e.e0, ctx);
        auto t1 = infer(*e.e1, ctx);
        u.unify(t0, t1, e.span);
        return t0;
      }
      case CoreKind::Fun: {
        auto arg = u.fresh();
        auto res = u.fresh();
        auto arrow = BaseType::make(BaseKind::Arrow, arg, res);
        ctx[e.bind1] = arrow;
        ctx[e.bind2] = arg;
        auto tb = infer(*e.e0, ctx);
        u.unify(tb, res, e.span);
        return arrow;
      }
      case CoreKind::App: {
        auto tf = lookup(ctx, e.var, e.span);
        auto ta = lookup(ctx, e.var2, e.span);
        auto res = u.fresh();
        u.unify(tf, BaseType::make(BaseKind::Arrow, ta, res), e.span);
        return res;
      }
      case CoreKind::Let: {
        auto t0 = infer(*e.e0, ctx);
        if (e.bind1 != "_") ctx[e.bind1] = t0;
        return infer(*e.e1, ctx);
      }
      case CoreKind::Share: {
        auto tx = lookup(ctx, e.var, e.span);
        ctx[e.bind1] = tx;
        ctx[e.bind2] = tx;
        return infer(*e.e0, ctx);
      }
      case CoreKind::Flip: {
        auto t0 = infer(*e.e0, ctx);
        auto t1 = infer(*e.e1, ctx);
        u.unify(t0, t1, e.span);
        return t0;
      }
      case CoreKind::FlipSym: {
        u.unify(lookup(ctx, e.var, e.span), BaseType::make(BaseKind::Prob),
                e.span);
        auto t0 = infer(*e.e0, ctx);
        auto t1 = infer(*e.e1, ctx);
        u.unify(t0, t1, e.span);
        return t0;
      }
    }
    throw TypeError(e.span, "malformed expression");
  }
};

}  // namespace

BaseTypePtr infer_base_types(const CoreExpr& e) {
  Inferencer inf;
  BaseTypePtr root = inf.infer(e, {});
  for (auto& [node, t] : inf.nodes) node->btype = inf.u.resolve(t);
  return e.btype;
}

}  // namespace praml
