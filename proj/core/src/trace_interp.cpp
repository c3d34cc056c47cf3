#include "praml/trace_interp.hpp"

#include <functional>
#include <random>

#include "praml/potential.hpp"

namespace praml {

std::string trace_to_string(const Trace& t) {
  std::string s;
  for (bool b : t) s += b ? 'H' : 'T';
  return s;
}

std::optional<Trace> trace_from_string(const std::string& s) {
  Trace t;
  for (char c : s) {
    if (c == 'H')
      t.push_back(true);
    else if (c == 'T')
      t.push_back(false);
    else
      return std::nullopt;
  }
  return t;
}

namespace {

struct BudgetExceeded {};
struct TraceExhausted {};
struct FlipForbidden {
  Span span;
};

struct EvalCtx {
  EvalLimits limits;
  unsigned long long steps = 0;
  int depth = 0;
  std::function<bool(const Rat&)> draw;  // flip outcome source
  Rat cost{0};
  Rat prob{1};
  Trace trace;
  CondObserver* observer = nullptr;
  long list_len = -1;  // innermost enclosing list-match scrutinee length

  void step() {
    if (++steps > limits.step_budget) throw BudgetExceeded{};
  }
};

struct DepthGuard {
  EvalCtx& ctx;
  explicit DepthGuard(EvalCtx& c) : ctx(c) {
    if (++ctx.depth > ctx.limits.depth_cap) throw BudgetExceeded{};
  }
  ~DepthGuard() { --ctx.depth; }
};

ValuePtr make_closure(const Env& env, const CoreExpr& fn) {
  // Capture only the free variables, in sorted order, so closures built
  // by different evaluators compare equal.
  auto fv = free_vars(fn);
  Env captured;
  for (auto it = fv.rbegin(); it != fv.rend(); ++it) {
    ValuePtr v = env_lookup(env, *it);
    if (v) captured = env_bind(captured, *it, std::move(v));
  }
  return v_closure(std::move(captured), fn.bind1, fn.bind2, &fn);
}

ValuePtr must_lookup(const Env& env, const std::string& name, Span span) {
  ValuePtr v = env_lookup(env, name);
  if (!v) throw EvalError(span, "unbound variable '" + name + "'");
  return v;
}

ValuePtr eval(const Env& env, const CoreExpr& e, EvalCtx& ctx) {
  ctx.step();
  DepthGuard guard(ctx);
  switch (e.kind) {
    case CoreKind::Var:
      return must_lookup(env, e.var, e.span);
    case CoreKind::Unit:
      return v_unit();
    case CoreKind::Nil:
      return v_nil();
    case CoreKind::IntLit:
      return v_int(e.ival);
    case CoreKind::BoolLit:
      return v_bool(e.bval);
    case CoreKind::Prob:
      return v_prob(e.lit);
    case CoreKind::Cons:
      return v_cons(must_lookup(env, e.var, e.span),
                    must_lookup(env, e.var2, e.span));
    case CoreKind::Tick:
      ctx.cost += e.lit;
      return v_unit();
    case CoreKind::Consume: {
      ValuePtr v = must_lookup(env, e.var, e.span);
      ctx.cost += phi(*v, e.ctype);
      return v_unit();
    }
    case CoreKind::Cmp: {
      ValuePtr a = must_lookup(env, e.var, e.span);
      ValuePtr b = must_lookup(env, e.var2, e.span);
      if (a->kind != ValKind::Int || b->kind != ValKind::Int)
        throw EvalError(e.span, "comparison requires integers");
      bool r = e.op == CmpOp::Lt   ? a->ival < b->ival
               : e.op == CmpOp::Gt ? a->ival > b->ival
                                   : a->ival == b->ival;
      return v_bool(r);
    }
    case CoreKind::Fun:
      return make_closure(env, e);
    case CoreKind::App: {
      ValuePtr f = must_lookup(env, e.var, e.span);
      if (f->kind != ValKind::Closure)
        throw EvalError(e.span, "application of a non-function");
      ValuePtr arg = must_lookup(env, e.var2, e.span);
      Env inner = env_bind(f->env, f->self, f);
      inner = env_bind(inner, f->param, std::move(arg));
      return eval(inner, *f->body, ctx);
    }
    case CoreKind::Let: {
      ValuePtr v0 = eval(env, *e.e0, ctx);
      Env inner = e.bind1 == "_" ? env : env_bind(env, e.bind1, std::move(v0));
      return eval(inner, *e.e1, ctx);
    }
    case CoreKind::Share: {
      ValuePtr v = must_lookup(env, e.var, e.span);
      Env inner = env_bind(env, e.bind1, v);
      inner = env_bind(inner, e.bind2, std::move(v));
      return eval(inner, *e.e0, ctx);
    }
    case CoreKind::MatL: {
      ValuePtr s = must_lookup(env, e.var, e.span);
      if (s->kind == ValKind::Nil) return eval(env, *e.e0, ctx);
      if (s->kind != ValKind::Cons)
        throw EvalError(e.span, "match requires a list");
      Env inner = env_bind(env, e.bind1, s->head);
      inner = env_bind(inner, e.bind2, s->tail);
      long saved = ctx.list_len;
      ctx.list_len = list_length(*s);
      ValuePtr r = eval(inner, *e.e1, ctx);
      ctx.list_len = saved;
      return r;
    }
    case CoreKind::If: {
      ValuePtr c = must_lookup(env, e.var, e.span);
      if (c->kind != ValKind::Bool)
        throw EvalError(e.span, "condition must be a bool");
      if (ctx.observer) ctx.observer->observe(e.site, c->bval, ctx.list_len);
      return eval(env, c->bval ? *e.e0 : *e.e1, ctx);
    }
    case CoreKind::Flip: {
      if (!ctx.draw) throw FlipForbidden{e.span};
      bool heads = ctx.draw(e.lit);
      ctx.trace.push_back(heads);
      ctx.prob *= heads ? e.lit : Rat(1) - e.lit;
      return eval(env, heads ? *e.e0 : *e.e1, ctx);
    }
    case CoreKind::FlipSym: {
      ValuePtr p = must_lookup(env, e.var, e.span);
      if (p->kind != ValKind::Prob)
        throw EvalError(e.span, "symbolic flip requires a probability value");
      if (!ctx.draw) throw FlipForbidden{e.span};
      bool heads = ctx.draw(p->prob);
      ctx.trace.push_back(heads);
      ctx.prob *= heads ? p->prob : Rat(1) - p->prob;
      return eval(env, heads ? *e.e0 : *e.e1, ctx);
    }
  }
  throw EvalError(e.span, "malformed expression");
}

// Exact Bernoulli(p) from a bit source: walk the binary expansion of p
// until a random bit differs from the expansion's bit.
class ExactBernoulli {
 public:
  explicit ExactBernoulli(unsigned long long seed) : rng_(seed) {}

  bool operator()(const Rat& p) {
    mpz_class num = p.get_num();
    const mpz_class& den = p.get_den();
    while (true) {
      num *= 2;
      int d = num >= den ? 1 : 0;
      if (d) num -= den;
      int b = bit();
      if (b != d) return b < d;
    }
  }

 private:
  std::mt19937_64 rng_;
  unsigned long long buf_ = 0;
  int avail_ = 0;

  int bit() {
    if (avail_ == 0) {
      buf_ = rng_();
      avail_ = 64;
    }
    int b = static_cast<int>(buf_ & 1);
    buf_ >>= 1;
    --avail_;
    return b;
  }
};

}  // namespace

ReplayOutcome replay(const Env& env, const CoreExpr& e, const Trace& trace,
                     const EvalLimits& limits) {
  EvalCtx ctx;
  ctx.limits = limits;
  std::size_t pos = 0;
  ctx.draw = [&](const Rat&) {
    if (pos >= trace.size()) throw TraceExhausted{};
    return trace[pos++];
  };
  ReplayOutcome out;
  try {
    ValuePtr v = eval(env, e, ctx);
    if (pos != trace.size()) {
      out.status = ReplayStatus::TraceTooLong;
      return out;
    }
    out.status = ReplayStatus::Ok;
    out.result = RunResult{std::move(v), ctx.cost, ctx.prob, ctx.trace};
  } catch (const TraceExhausted&) {
    out.status = ReplayStatus::TraceTooShort;
  } catch (const BudgetExceeded&) {
    out.status = ReplayStatus::Budget;
  }
  return out;
}

SampleOutcome sample(const Env& env, const CoreExpr& e,
                     unsigned long long seed, const EvalLimits& limits) {
  EvalCtx ctx;
  ctx.limits = limits;
  ExactBernoulli bern(seed);
  ctx.draw = [&](const Rat& p) { return bern(p); };
  SampleOutcome out;
  try {
    ValuePtr v = eval(env, e, ctx);
    out.result = RunResult{std::move(v), ctx.cost, ctx.prob, ctx.trace};
  } catch (const BudgetExceeded&) {
    out.budget_exhausted = true;
  }
  return out;
}

namespace {

struct PathRes {
  ValuePtr v;
  Rat cost;
  Rat prob;
  Trace trace;
};

struct EnumCtx {
  EvalLimits limits;
  unsigned long long steps = 0;
  int depth = 0;

  void step() {
    if (++steps > limits.step_budget)
      throw EvalError(Span{}, "enumeration step budget exhausted");
  }
};

std::vector<PathRes> ev_all(const Env& env, const CoreExpr& e, int flips_left,
                            EnumCtx& ctx);

std::vector<PathRes> branch_all(const Env& env, const CoreExpr& h,
                                const CoreExpr& t, const Rat& p,
                                int flips_left, EnumCtx& ctx) {
  std::vector<PathRes> out;
  if (flips_left <= 0) return out;
  if (sgn(p) > 0)
    for (auto& r : ev_all(env, h, flips_left - 1, ctx)) {
      Trace tr{true};
      tr.insert(tr.end(), r.trace.begin(), r.trace.end());
      out.push_back({std::move(r.v), std::move(r.cost), Rat(p * r.prob),
                     std::move(tr)});
    }
  Rat np = Rat(1) - p;
  if (sgn(np) > 0)
    for (auto& r : ev_all(env, t, flips_left - 1, ctx)) {
      Trace tr{false};
      tr.insert(tr.end(), r.trace.begin(), r.trace.end());
      out.push_back({std::move(r.v), std::move(r.cost), Rat(np * r.prob),
                     std::move(tr)});
    }
  return out;
}

std::vector<PathRes> ev_all(const Env& env, const CoreExpr& e, int flips_left,
                            EnumCtx& ctx) {
  ctx.step();
  if (ctx.depth > ctx.limits.depth_cap)
    throw EvalError(e.span, "enumeration depth cap exceeded");
  ++ctx.depth;
  struct Dec {
    int& d;
    ~Dec() { --d; }
  } dec{ctx.depth};

  auto single = [&](ValuePtr v, Rat cost = Rat(0)) {
    std::vector<PathRes> out;
    out.push_back({std::move(v), std::move(cost), Rat(1), {}});
    return out;
  };

  switch (e.kind) {
    case CoreKind::Var:
      return single(must_lookup(env, e.var, e.span));
    case CoreKind::Unit:
      return single(v_unit());
    case CoreKind::Nil:
      return single(v_nil());
    case CoreKind::IntLit:
      return single(v_int(e.ival));
    case CoreKind::BoolLit:
      return single(v_bool(e.bval));
    case CoreKind::Prob:
      return single(v_prob(e.lit));
    case CoreKind::Cons:
      return single(v_cons(must_lookup(env, e.var, e.span),
                           must_lookup(env, e.var2, e.span)));
    case CoreKind::Tick:
      return single(v_unit(), e.lit);
    case CoreKind::Consume: {
      ValuePtr v = must_lookup(env, e.var, e.span);
      return single(v_unit(), phi(*v, e.ctype));
    }
    case CoreKind::Cmp: {
      ValuePtr a = must_lookup(env, e.var, e.span);
      ValuePtr b = must_lookup(env, e.var2, e.span);
      if (a->kind != ValKind::Int || b->kind != ValKind::Int)
        throw EvalError(e.span, "comparison requires integers");
      bool r = e.op == CmpOp::Lt   ? a->ival < b->ival
               : e.op == CmpOp::Gt ? a->ival > b->ival
                                   : a->ival == b->ival;
      return single(v_bool(r));
    }
    case CoreKind::Fun:
      return single(make_closure(env, e));
    case CoreKind::App: {
      ValuePtr f = must_lookup(env, e.var, e.span);
      if (f->kind != ValKind::Closure)
        throw EvalError(e.span, "application of a non-function");
      Env inner = env_bind(f->env, f->self, f);
      inner = env_bind(inner, f->param, must_lookup(env, e.var2, e.span));
      return ev_all(inner, *f->body, flips_left, ctx);
    }
    case CoreKind::Let: {
      std::vector<PathRes> out;
      for (auto& r0 : ev_all(env, *e.e0, flips_left, ctx)) {
        Env inner = e.bind1 == "_" ? env : env_bind(env, e.bind1, r0.v);
        int rem = flips_left - static_cast<int>(r0.trace.size());
        for (auto& r1 : ev_all(inner, *e.e1, rem, ctx)) {
          Trace tr = r0.trace;
          tr.insert(tr.end(), r1.trace.begin(), r1.trace.end());
          out.push_back({std::move(r1.v), Rat(r0.cost + r1.cost),
                         Rat(r0.prob * r1.prob), std::move(tr)});
        }
      }
      return out;
    }
    case CoreKind::Share: {
      ValuePtr v = must_lookup(env, e.var, e.span);
      Env inner = env_bind(env, e.bind1, v);
      inner = env_bind(inner, e.bind2, std::move(v));
      return ev_all(inner, *e.e0, flips_left, ctx);
    }
    case CoreKind::MatL: {
      ValuePtr s = must_lookup(env, e.var, e.span);
      if (s->kind == ValKind::Nil) return ev_all(env, *e.e0, flips_left, ctx);
      if (s->kind != ValKind::Cons)
        throw EvalError(e.span, "match requires a list");
      Env inner = env_bind(env, e.bind1, s->head);
      inner = env_bind(inner, e.bind2, s->tail);
      return ev_all(inner, *e.e1, flips_left, ctx);
    }
    case CoreKind::If: {
      ValuePtr c = must_lookup(env, e.var, e.span);
      if (c->kind != ValKind::Bool)
        throw EvalError(e.span, "condition must be a bool");
      return ev_all(env, c->bval ? *e.e0 : *e.e1, flips_left, ctx);
    }
    case CoreKind::Flip:
      return branch_all(env, *e.e0, *e.e1, e.lit, flips_left, ctx);
    case CoreKind::FlipSym: {
      ValuePtr p = must_lookup(env, e.var, e.span);
      if (p->kind != ValKind::Prob)
        throw EvalError(e.span, "symbolic flip requires a probability value");
      return branch_all(env, *e.e0, *e.e1, p->prob, flips_left, ctx);
    }
  }
  throw EvalError(e.span, "malformed expression");
}

}  // namespace

CostDist enumerate(const Env& env, const CoreExpr& e, int max_trace_len,
                   const EvalLimits& limits) {
  EnumCtx ctx;
  ctx.limits = limits;
  CostDist dist;
  for (auto& r : ev_all(env, e, max_trace_len, ctx))
    dist.add(Outcome{std::move(r.v)}, ExtCost::finite(std::move(r.cost)),
             std::move(r.prob));
  return dist;
}

DetRun run_deterministic(const Env& env, const CoreExpr& e,
                         CondObserver* observer, const EvalLimits& limits) {
  EvalCtx ctx;
  ctx.limits = limits;
  ctx.observer = observer;
  ctx.draw = nullptr;  // flips raise FlipForbidden
  try {
    ValuePtr v = eval(env, e, ctx);
    return DetRun{std::move(v), ctx.cost};
  } catch (const FlipForbidden& f) {
    throw EvalError(f.span, "profile requires deterministic program");
  } catch (const BudgetExceeded&) {
    throw EvalError(e.span, "step budget exhausted; possibly divergent");
  }
}

}  // namespace praml
