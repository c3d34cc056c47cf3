#include "praml/normalize.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace praml {

namespace {

// ---- scope checking ---------------------------------------------------

void scope_check(const SurfaceExpr& e, std::set<std::string> env) {
  auto require = [&](const std::string& n, Span sp) {
    if (n != "_" && !env.count(n))
      throw ScopeError(sp, "unbound variable '" + n + "'");
  };
  switch (e.kind) {
    case SurfKind::Var:
      require(e.name, e.span);
      return;
    case SurfKind::Consume:
    case SurfKind::FlipSym:
      require(e.name, e.span);
      for (const auto& k : e.kids) scope_check(*k, env);
      return;
    case SurfKind::Share: {
      require(e.name, e.span);
      env.insert(e.bind1);
      env.insert(e.bind2);
      scope_check(*e.kids[0], env);
      return;
    }
    case SurfKind::Let: {
      scope_check(*e.kids[0], env);
      env.insert(e.bind1);
      scope_check(*e.kids[1], env);
      return;
    }
    case SurfKind::Fun: {
      env.insert(e.name);
      for (const auto& p : e.params) env.insert(p);
      scope_check(*e.kids[0], env);
      return;
    }
    case SurfKind::MatL: {
      scope_check(*e.kids[0], env);
      scope_check(*e.kids[1], env);
      env.insert(e.bind1);
      env.insert(e.bind2);
      scope_check(*e.kids[2], env);
      return;
    }
    default:
      for (const auto& k : e.kids) scope_check(*k, env);
      return;
  }
}

// ---- free path counting -----------------------------------------------

int count_free(const CoreExpr& e, const std::string& v) {
  auto hit = [&](const std::string& n) { return n == v ? 1 : 0; };
  switch (e.kind) {
    case CoreKind::Var:
      return hit(e.var);
    case CoreKind::Unit:
    case CoreKind::Nil:
    case CoreKind::Tick:
    case CoreKind::Prob:
    case CoreKind::IntLit:
    case CoreKind::BoolLit:
      return 0;
    case CoreKind::Cons:
    case CoreKind::App:
    case CoreKind::Cmp:
      return hit(e.var) + hit(e.var2);
    case CoreKind::Consume:
      return hit(e.var);
    case CoreKind::MatL: {
      int branches = std::max(
          count_free(*e.e0, v),
          (v == e.bind1 || v == e.bind2) ? 0 : count_free(*e.e1, v));
      return hit(e.var) + branches;
    }
    case CoreKind::Fun:
      return (v == e.bind1 || v == e.bind2) ? 0 : count_free(*e.e0, v);
    case CoreKind::Let:
      return count_free(*e.e0, v) +
             (v == e.bind1 ? 0 : count_free(*e.e1, v));
    case CoreKind::Share:
      return hit(e.var) + ((v == e.bind1 || v == e.bind2)
                               ? 0
                               : count_free(*e.e0, v));
    case CoreKind::Flip:
      return std::max(count_free(*e.e0, v), count_free(*e.e1, v));
    case CoreKind::FlipSym:
    case CoreKind::If:
      return hit(e.var) + std::max(count_free(*e.e0, v), count_free(*e.e1, v));
  }
  return 0;
}

void free_vars(const CoreExpr& e, std::set<std::string>& out,
               std::set<std::string> bound) {
  auto add = [&](const std::string& n) {
    if (!n.empty() && n != "_" && !bound.count(n)) out.insert(n);
  };
  switch (e.kind) {
    case CoreKind::Var:
      add(e.var);
      return;
    case CoreKind::Cons:
    case CoreKind::App:
    case CoreKind::Cmp:
      add(e.var);
      add(e.var2);
      return;
    case CoreKind::Consume:
      add(e.var);
      return;
    case CoreKind::MatL: {
      add(e.var);
      free_vars(*e.e0, out, bound);
      auto b = bound;
      b.insert(e.bind1);
      b.insert(e.bind2);
      free_vars(*e.e1, out, b);
      return;
    }
    case CoreKind::Fun: {
      auto b = bound;
      b.insert(e.bind1);
      b.insert(e.bind2);
      free_vars(*e.e0, out, b);
      return;
    }
    case CoreKind::Let: {
      free_vars(*e.e0, out, bound);
      auto b = bound;
      b.insert(e.bind1);
      free_vars(*e.e1, out, b);
      return;
    }
    case CoreKind::Share: {
      add(e.var);
      auto b = bound;
      b.insert(e.bind1);
      b.insert(e.bind2);
      free_vars(*e.e0, out, b);
      return;
    }
    case CoreKind::Flip:
      free_vars(*e.e0, out, bound);
      free_vars(*e.e1, out, bound);
      return;
    case CoreKind::FlipSym:
    case CoreKind::If:
      add(e.var);
      free_vars(*e.e0, out, bound);
      free_vars(*e.e1, out, bound);
      return;
    default:
      return;
  }
}

// Renames free occurrences of `v` to `w` in place.
void rename_free(CoreExpr& e, const std::string& v, const std::string& w) {
  auto ren = [&](std::string& n) {
    if (n == v) n = w;
  };
  switch (e.kind) {
    case CoreKind::Var:
      ren(e.var);
      return;
    case CoreKind::Cons:
    case CoreKind::App:
    case CoreKind::Cmp:
      ren(e.var);
      ren(e.var2);
      return;
    case CoreKind::Consume:
      ren(e.var);
      return;
    case CoreKind::MatL:
      ren(e.var);
      rename_free(*e.e0, v, w);
      if (v != e.bind1 && v != e.bind2) rename_free(*e.e1, v, w);
      return;
    case CoreKind::Fun:
      if (v != e.bind1 && v != e.bind2) rename_free(*e.e0, v, w);
      return;
    case CoreKind::Let:
      rename_free(*e.e0, v, w);
      if (v != e.bind1) rename_free(*e.e1, v, w);
      return;
    case CoreKind::Share:
      ren(e.var);
      if (v != e.bind1 && v != e.bind2) rename_free(*e.e0, v, w);
      return;
    case CoreKind::Flip:
      rename_free(*e.e0, v, w);
      rename_free(*e.e1, v, w);
      return;
    case CoreKind::FlipSym:
    case CoreKind::If:
      ren(e.var);
      rename_free(*e.e0, v, w);
      rename_free(*e.e1, v, w);
      return;
    default:
      return;
  }
}

// ---- lowering -----------------------------------------------------------

struct Lowerer {
  int tmp_counter = 0;
  int shr_counter = 0;
  int fun_counter = 0;

  std::string fresh_tmp() { return "%tmp" + std::to_string(++tmp_counter); }
  std::string fresh_shr() { return "%shr" + std::to_string(++shr_counter); }
  std::string fresh_fun() { return "%fun" + std::to_string(++fun_counter); }

  struct Binding {
    std::string name;
    CorePtr rhs;
  };

  CorePtr wrap(std::vector<Binding> pre, CorePtr body) {
    while (!pre.empty()) {
      auto let = make_core(CoreKind::Let, pre.back().rhs->span);
      let->bind1 = std::move(pre.back().name);
      let->e0 = std::move(pre.back().rhs);
      let->e1 = std::move(body);
      body = std::move(let);
      pre.pop_back();
    }
    return body;
  }

  std::string atom(const SurfaceExpr& e, std::vector<Binding>& pre) {
    if (e.kind == SurfKind::Var) return e.name;
    auto c = lower(e);
    std::string t = fresh_tmp();
    pre.push_back({t, std::move(c)});
    return t;
  }

  CorePtr lower(const SurfaceExpr& e) {
    switch (e.kind) {
      case SurfKind::Var: {
        auto c = make_core(CoreKind::Var, e.span);
        c->var = e.name;
        return c;
      }
      case SurfKind::Unit:
        return make_core(CoreKind::Unit, e.span);
      case SurfKind::Nil:
        return make_core(CoreKind::Nil, e.span);
      case SurfKind::IntLit: {
        auto c = make_core(CoreKind::IntLit, e.span);
        c->ival = e.ival;
        return c;
      }
      case SurfKind::BoolLit: {
        auto c = make_core(CoreKind::BoolLit, e.span);
        c->bval = e.bval;
        return c;
      }
      case SurfKind::Tick: {
        auto c = make_core(CoreKind::Tick, e.span);
        c->lit = e.lit;
        return c;
      }
      case SurfKind::Prob: {
        auto c = make_core(CoreKind::Prob, e.span);
        c->lit = e.lit;
        return c;
      }
      case SurfKind::Consume: {
        auto c = make_core(CoreKind::Consume, e.span);
        c->var = e.name;
        c->ctype = e.ctype;
        return c;
      }
      case SurfKind::Cons: {
        std::vector<Binding> pre;
        std::string h = atom(*e.kids[0], pre);
        std::string t = atom(*e.kids[1], pre);
        auto c = make_core(CoreKind::Cons, e.span);
        c->var = h;
        c->var2 = t;
        return wrap(std::move(pre), std::move(c));
      }
      case SurfKind::ListLit: {
        // [a; b] -> a :: b :: [], innermost first.
        CorePtr tail = make_core(CoreKind::Nil, e.span);
        for (std::size_t i = e.kids.size(); i-- > 0;) {
          std::vector<Binding> pre;
          std::string h = atom(*e.kids[i], pre);
          std::string t = fresh_tmp();
          auto cons = make_core(CoreKind::Cons, e.kids[i]->span);
          cons->var = h;
          cons->var2 = t;
          auto let = make_core(CoreKind::Let, e.span);
          let->bind1 = t;
          let->e0 = std::move(tail);
          let->e1 = wrap(std::move(pre), std::move(cons));
          tail = std::move(let);
        }
        return tail;
      }
      case SurfKind::App: {
        std::vector<Binding> pre;
        std::string f = atom(*e.kids[0], pre);
        std::string a = atom(*e.kids[1], pre);
        auto c = make_core(CoreKind::App, e.span);
        c->var = f;
        c->var2 = a;
        return wrap(std::move(pre), std::move(c));
      }
      case SurfKind::Cmp: {
        std::vector<Binding> pre;
        std::string l = atom(*e.kids[0], pre);
        std::string r = atom(*e.kids[1], pre);
        auto c = make_core(CoreKind::Cmp, e.span);
        c->op = e.op;
        c->var = l;
        c->var2 = r;
        return wrap(std::move(pre), std::move(c));
      }
      case SurfKind::Let: {
        auto c = make_core(CoreKind::Let, e.span);
        c->bind1 = e.bind1;
        c->e0 = lower(*e.kids[0]);
        c->e1 = lower(*e.kids[1]);
        return c;
      }
      case SurfKind::Share: {
        auto c = make_core(CoreKind::Share, e.span);
        c->var = e.name;
        c->bind1 = e.bind1;
        c->bind2 = e.bind2;
        c->e0 = lower(*e.kids[0]);
        return c;
      }
      case SurfKind::Fun: {
        // Multi-parameter functions curry; inner closures get fresh
        // (unused) self names.
        CorePtr body = lower(*e.kids[0]);
        for (std::size_t i = e.params.size(); i-- > 1;) {
          auto fn = make_core(CoreKind::Fun, e.span);
          fn->bind1 = fresh_fun();
          fn->bind2 = e.params[i];
          fn->e0 = std::move(body);
          body = std::move(fn);
        }
        auto fn = make_core(CoreKind::Fun, e.span);
        fn->bind1 = e.name;
        fn->bind2 = e.params[0];
        fn->e0 = std::move(body);
        return fn;
      }
      case SurfKind::MatL: {
        std::vector<Binding> pre;
        std::string s = atom(*e.kids[0], pre);
        auto c = make_core(CoreKind::MatL, e.span);
        c->var = s;
        c->bind1 = e.bind1;
        c->bind2 = e.bind2;
        c->e0 = lower(*e.kids[1]);
        c->e1 = lower(*e.kids[2]);
        return wrap(std::move(pre), std::move(c));
      }
      case SurfKind::MatB:
      case SurfKind::If: {
        std::vector<Binding> pre;
        std::string s = atom(*e.kids[0], pre);
        auto c = make_core(CoreKind::If, e.span);
        c->var = s;
        c->e0 = lower(*e.kids[1]);
        c->e1 = lower(*e.kids[2]);
        return wrap(std::move(pre), std::move(c));
      }
      case SurfKind::Flip: {
        auto c = make_core(CoreKind::Flip, e.span);
        c->lit = e.lit;
        c->e0 = lower(*e.kids[0]);
        c->e1 = lower(*e.kids[1]);
        return c;
      }
      case SurfKind::FlipSym: {
        auto c = make_core(CoreKind::FlipSym, e.span);
        c->var = e.name;
        c->e0 = lower(*e.kids[0]);
        c->e1 = lower(*e.kids[1]);
        return c;
      }
    }
    return nullptr;
  }

  // Bottom-up share insertion.
  CorePtr shareify(CorePtr e) {
    if (e->e0) e->e0 = shareify(std::move(e->e0));
    if (e->e1) e->e1 = shareify(std::move(e->e1));

    std::set<std::string> fv;
    free_vars(*e, fv, {});
    std::vector<std::string> multi;
    for (const auto& v : fv)
      if (count_free(*e, v) >= 2) multi.push_back(v);
    // Split every variable against the original node first, then wrap;
    // sorted iteration keeps the output deterministic.
    struct Pending {
      std::string v, a, b;
    };
    std::vector<Pending> pending;
    for (const auto& v : multi) {
      Pending p{v, fresh_shr(), fresh_shr()};
      split_uses(*e, v, p.a, p.b);
      pending.push_back(std::move(p));
    }
    for (auto it = pending.rbegin(); it != pending.rend(); ++it) {
      auto sh = make_core(CoreKind::Share, e->span);
      sh->var = it->v;
      sh->bind1 = it->a;
      sh->bind2 = it->b;
      sh->e0 = std::move(e);
      e = std::move(sh);
    }
    return e;
  }

  // Splits the two sequential use groups of `v` at this node between the
  // fresh names `a` (first group) and `b` (second group). Children are
  // already share-normalized, so each group holds at most one path use.
  void split_uses(CoreExpr& e, const std::string& v, const std::string& a,
                  const std::string& b) {
    switch (e.kind) {
      case CoreKind::Cons:
      case CoreKind::App:
      case CoreKind::Cmp:
        if (e.var == v) e.var = a;
        if (e.var2 == v) e.var2 = b;
        return;
      case CoreKind::Let:
        rename_free(*e.e0, v, a);
        if (v != e.bind1) rename_free(*e.e1, v, b);
        return;
      case CoreKind::MatL:
        if (e.var == v) e.var = a;
        rename_free(*e.e0, v, b);
        if (v != e.bind1 && v != e.bind2) rename_free(*e.e1, v, b);
        return;
      case CoreKind::FlipSym:
      case CoreKind::If:
        if (e.var == v) e.var = a;
        rename_free(*e.e0, v, b);
        rename_free(*e.e1, v, b);
        return;
      case CoreKind::Share:
        if (e.var == v) e.var = a;
        if (v != e.bind1 && v != e.bind2) rename_free(*e.e0, v, b);
        return;
      default:
        return;  // other nodes cannot duplicate a variable
    }
  }
};

void label_sites(CoreExpr& e, int& next) {
  if (e.kind == CoreKind::If) e.site = next++;
  if (e.e0) label_sites(*e.e0, next);
  if (e.e1) label_sites(*e.e1, next);
}

void affine_check(const CoreExpr& e, std::string& diag) {
  if (!diag.empty()) return;
  auto check_binder = [&](const CoreExpr& scope, const std::string& n) {
    if (n.empty() || n == "_") return;
    if (count_free(scope, n) > 1)
      diag = "variable '" + n + "' used more than once on a path";
  };
  switch (e.kind) {
    case CoreKind::MatL:
      check_binder(*e.e1, e.bind1);
      check_binder(*e.e1, e.bind2);
      break;
    case CoreKind::Fun:
      check_binder(*e.e0, e.bind1);
      check_binder(*e.e0, e.bind2);
      break;
    case CoreKind::Let:
      check_binder(*e.e1, e.bind1);
      break;
    case CoreKind::Share:
      check_binder(*e.e0, e.bind1);
      check_binder(*e.e0, e.bind2);
      break;
    default:
      break;
  }
  if (e.e0) affine_check(*e.e0, diag);
  if (e.e1) affine_check(*e.e1, diag);
}

}  // namespace

int free_path_count(const CoreExpr& e, const std::string& v) {
  return count_free(e, v);
}

CorePtr normalize(const SurfaceExpr& e) {
  scope_check(e, {});
  Lowerer lw;
  auto core = lw.lower(e);
  core = lw.shareify(std::move(core));
  int next = 0;
  label_sites(*core, next);
  return core;
}

std::string check_core_invariants(const CoreExpr& e) {
  std::string diag;
  affine_check(e, diag);
  return diag;
}

}  // namespace praml
