#include "praml/core_expr.hpp"

#include <map>
#include <set>

namespace praml {

CorePtr make_core(CoreKind kind, Span span) {
  auto e = std::make_unique<CoreExpr>();
  e->kind = kind;
  e->span = span;
  return e;
}

CorePtr clone(const CoreExpr& e) {
  auto c = std::make_unique<CoreExpr>();
  c->kind = e.kind;
  c->span = e.span;
  c->var = e.var;
  c->var2 = e.var2;
  c->bind1 = e.bind1;
  c->bind2 = e.bind2;
  c->lit = e.lit;
  c->ival = e.ival;
  c->bval = e.bval;
  c->op = e.op;
  c->ctype = e.ctype;
  c->site = e.site;
  if (e.e0) c->e0 = clone(*e.e0);
  if (e.e1) c->e1 = clone(*e.e1);
  return c;
}

namespace {

using NameMap = std::map<std::string, int>;

bool same_name(const std::string& a, const std::string& b, const NameMap& ma,
               const NameMap& mb) {
  auto ia = ma.find(a);
  auto ib = mb.find(b);
  if ((ia == ma.end()) != (ib == mb.end())) return false;
  if (ia == ma.end()) return a == b;  // both free
  return ia->second == ib->second;
}

bool alpha_eq(const CoreExpr& a, const CoreExpr& b, NameMap ma, NameMap mb,
              int depth) {
  if (a.kind != b.kind) return false;
  auto bind = [&](const std::string& na, const std::string& nb) {
    ma[na] = depth;
    mb[nb] = depth;
    ++depth;
  };
  switch (a.kind) {
    case CoreKind::Var:
      return same_name(a.var, b.var, ma, mb);
    case CoreKind::Unit:
    case CoreKind::Nil:
      return true;
    case CoreKind::IntLit:
      return a.ival == b.ival;
    case CoreKind::BoolLit:
      return a.bval == b.bval;
    case CoreKind::Tick:
    case CoreKind::Prob:
      return a.lit == b.lit;
    case CoreKind::Cons:
    case CoreKind::App:
      return same_name(a.var, b.var, ma, mb) &&
             same_name(a.var2, b.var2, ma, mb);
    case CoreKind::Cmp:
      return a.op == b.op && same_name(a.var, b.var, ma, mb) &&
             same_name(a.var2, b.var2, ma, mb);
    case CoreKind::Consume:
      return same_name(a.var, b.var, ma, mb) && equal(*a.ctype.ty, *b.ctype.ty) &&
             equal(a.ctype.q, b.ctype.q);
    case CoreKind::MatL: {
      if (!same_name(a.var, b.var, ma, mb)) return false;
      if (!alpha_eq(*a.e0, *b.e0, ma, mb, depth)) return false;
      bind(a.bind1, b.bind1);
      bind(a.bind2, b.bind2);
      return alpha_eq(*a.e1, *b.e1, ma, mb, depth);
    }
    case CoreKind::Fun: {
      bind(a.bind1, b.bind1);
      bind(a.bind2, b.bind2);
      return alpha_eq(*a.e0, *b.e0, ma, mb, depth);
    }
    case CoreKind::Let: {
      if (!alpha_eq(*a.e0, *b.e0, ma, mb, depth)) return false;
      bind(a.bind1, b.bind1);
      return alpha_eq(*a.e1, *b.e1, ma, mb, depth);
    }
    case CoreKind::Share: {
      if (!same_name(a.var, b.var, ma, mb)) return false;
      bind(a.bind1, b.bind1);
      bind(a.bind2, b.bind2);
      return alpha_eq(*a.e0, *b.e0, ma, mb, depth);
    }
    case CoreKind::Flip:
      return a.lit == b.lit && alpha_eq(*a.e0, *b.e0, ma, mb, depth) &&
             alpha_eq(*a.e1, *b.e1, ma, mb, depth);
    case CoreKind::FlipSym:
    case CoreKind::If:
      return same_name(a.var, b.var, ma, mb) &&
             alpha_eq(*a.e0, *b.e0, ma, mb, depth) &&
             alpha_eq(*a.e1, *b.e1, ma, mb, depth);
  }
  return false;
}

void collect_names(const CoreExpr& e, std::set<std::string>& out) {
  out.insert(e.var);
  out.insert(e.var2);
  out.insert(e.bind1);
  out.insert(e.bind2);
  if (e.e0) collect_names(*e.e0, out);
  if (e.e1) collect_names(*e.e1, out);
}

struct Renamer {
  std::map<std::string, std::string> map;
  std::set<std::string> used;
  int counter = 0;

  std::string operator()(const std::string& n) {
    if (n.empty() || n[0] != '%') return n;
    auto it = map.find(n);
    if (it != map.end()) return it->second;
    std::string fresh;
    do {
      fresh = "_t" + std::to_string(++counter);
    } while (used.count(fresh));
    used.insert(fresh);
    map[n] = fresh;
    return fresh;
  }
};

SurfPtr embed_rec(const CoreExpr& e, Renamer& rn) {
  auto mkvar = [&](const std::string& n, Span sp) {
    auto v = make_surface(SurfKind::Var, sp);
    v->name = rn(n);
    return v;
  };
  switch (e.kind) {
    case CoreKind::Var: {
      return mkvar(e.var, e.span);
    }
    case CoreKind::Unit:
      return make_surface(SurfKind::Unit, e.span);
    case CoreKind::Nil:
      return make_surface(SurfKind::Nil, e.span);
    case CoreKind::IntLit: {
      auto s = make_surface(SurfKind::IntLit, e.span);
      s->ival = e.ival;
      return s;
    }
    case CoreKind::BoolLit: {
      auto s = make_surface(SurfKind::BoolLit, e.span);
      s->bval = e.bval;
      return s;
    }
    case CoreKind::Tick: {
      auto s = make_surface(SurfKind::Tick, e.span);
      s->lit = e.lit;
      return s;
    }
    case CoreKind::Prob: {
      auto s = make_surface(SurfKind::Prob, e.span);
      s->lit = e.lit;
      return s;
    }
    case CoreKind::Cons: {
      auto s = make_surface(SurfKind::Cons, e.span);
      s->kids.push_back(mkvar(e.var, e.span));
      s->kids.push_back(mkvar(e.var2, e.span));
      return s;
    }
    case CoreKind::App: {
      auto s = make_surface(SurfKind::App, e.span);
      s->kids.push_back(mkvar(e.var, e.span));
      s->kids.push_back(mkvar(e.var2, e.span));
      return s;
    }
    case CoreKind::Cmp: {
      auto s = make_surface(SurfKind::Cmp, e.span);
      s->op = e.op;
      s->kids.push_back(mkvar(e.var, e.span));
      s->kids.push_back(mkvar(e.var2, e.span));
      return s;
    }
    case CoreKind::Consume: {
      auto s = make_surface(SurfKind::Consume, e.span);
      s->name = rn(e.var);
      s->ctype = e.ctype;
      return s;
    }
    case CoreKind::MatL: {
      auto s = make_surface(SurfKind::MatL, e.span);
      s->bind1 = rn(e.bind1);
      s->bind2 = rn(e.bind2);
      s->kids.push_back(mkvar(e.var, e.span));
      s->kids.push_back(embed_rec(*e.e0, rn));
      s->kids.push_back(embed_rec(*e.e1, rn));
      return s;
    }
    case CoreKind::Fun: {
      auto s = make_surface(SurfKind::Fun, e.span);
      s->name = rn(e.bind1);
      s->params.push_back(rn(e.bind2));
      s->kids.push_back(embed_rec(*e.e0, rn));
      return s;
    }
    case CoreKind::Let: {
      auto s = make_surface(SurfKind::Let, e.span);
      s->bind1 = rn(e.bind1);
      s->kids.push_back(embed_rec(*e.e0, rn));
      s->kids.push_back(embed_rec(*e.e1, rn));
      return s;
    }
    case CoreKind::Share: {
      auto s = make_surface(SurfKind::Share, e.span);
      s->name = rn(e.var);
      s->bind1 = rn(e.bind1);
      s->bind2 = rn(e.bind2);
      s->kids.push_back(embed_rec(*e.e0, rn));
      return s;
    }
    case CoreKind::Flip: {
      auto s = make_surface(SurfKind::Flip, e.span);
      s->lit = e.lit;
      s->kids.push_back(embed_rec(*e.e0, rn));
      s->kids.push_back(embed_rec(*e.e1, rn));
      return s;
    }
    case CoreKind::FlipSym: {
      auto s = make_surface(SurfKind::FlipSym, e.span);
      s->name = rn(e.var);
      s->kids.push_back(embed_rec(*e.e0, rn));
      s->kids.push_back(embed_rec(*e.e1, rn));
      return s;
    }
    case CoreKind::If: {
      auto s = make_surface(SurfKind::If, e.span);
      s->kids.push_back(mkvar(e.var, e.span));
      s->kids.push_back(embed_rec(*e.e0, rn));
      s->kids.push_back(embed_rec(*e.e1, rn));
      return s;
    }
  }
  return nullptr;
}

}  // namespace

bool alpha_equal(const CoreExpr& a, const CoreExpr& b) {
  return alpha_eq(a, b, {}, {}, 0);
}

SurfPtr embed(const CoreExpr& e) {
  Renamer rn;
  collect_names(e, rn.used);
  return embed_rec(e, rn);
}

int count_sites(const CoreExpr& e) {
  int n = e.kind == CoreKind::If ? 1 : 0;
  if (e.e0) n += count_sites(*e.e0);
  if (e.e1) n += count_sites(*e.e1);
  return n;
}

namespace {

void fv_rec(const CoreExpr& e, std::set<std::string>& out,
            std::set<std::string>& bound) {
  auto add = [&](const std::string& n) {
    if (!n.empty() && n != "_" && !bound.count(n)) out.insert(n);
  };
  auto scoped = [&](const CoreExpr& sub, const std::string& b1,
                    const std::string& b2) {
    bool n1 = !b1.empty() && !bound.count(b1);
    bool n2 = !b2.empty() && !bound.count(b2);
    if (n1) bound.insert(b1);
    if (n2) bound.insert(b2);
    fv_rec(sub, out, bound);
    if (n1) bound.erase(b1);
    if (n2) bound.erase(b2);
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
    case CoreKind::MatL:
      add(e.var);
      fv_rec(*e.e0, out, bound);
      scoped(*e.e1, e.bind1, e.bind2);
      return;
    case CoreKind::Fun:
      scoped(*e.e0, e.bind1, e.bind2);
      return;
    case CoreKind::Let:
      fv_rec(*e.e0, out, bound);
      scoped(*e.e1, e.bind1, "");
      return;
    case CoreKind::Share:
      add(e.var);
      scoped(*e.e0, e.bind1, e.bind2);
      return;
    case CoreKind::Flip:
      fv_rec(*e.e0, out, bound);
      fv_rec(*e.e1, out, bound);
      return;
    case CoreKind::FlipSym:
    case CoreKind::If:
      add(e.var);
      fv_rec(*e.e0, out, bound);
      fv_rec(*e.e1, out, bound);
      return;
    default:
      return;
  }
}

}  // namespace

// let %a1 = %f %x0 in let %a2 = %a1 %x1 in ... %ak
CorePtr application_chain(std::size_t arity) {
  std::string fn = "%f";
  CorePtr body;
  std::vector<std::pair<std::string, CorePtr>> lets;
  for (std::size_t i = 0; i < arity; ++i) {
    auto app = make_core(CoreKind::App, Span{});
    app->var = fn;
    app->var2 = "%x" + std::to_string(i);
    fn = "%a" + std::to_string(i + 1);
    lets.emplace_back(fn, std::move(app));
  }
  auto last = make_core(CoreKind::Var, Span{});
  last->var = fn;
  body = std::move(last);
  for (auto it = lets.rbegin(); it != lets.rend(); ++it) {
    auto let = make_core(CoreKind::Let, Span{});
    let->bind1 = it->first;
    let->e0 = std::move(it->second);
    let->e1 = std::move(body);
    body = std::move(let);
  }
  return body;
}

std::set<std::string> free_vars(const CoreExpr& e) {
  std::set<std::string> out, bound;
  fv_rec(e, out, bound);
  return out;
}

}  // namespace praml
