#pragma once

// Test-only direct interpreter over the surface syntax. It enumerates all
// terminating executions with at most a given number of coin flips,
// mirroring the evaluation order the normalizer fixes (left-to-right for
// cons/application/comparison, right-to-left inside list literals). Used
// as the independent oracle for normalization equivalence; it never looks
// at the core representation.

#include <map>
#include <memory>
#include <vector>

#include "praml/cost_dist.hpp"
#include "praml/surface.hpp"
#include "praml/potential.hpp"

namespace praml::testing {

namespace surface_oracle_detail {

struct SValue;
using SValuePtr = std::shared_ptr<const SValue>;
using SEnv = std::map<std::string, SValuePtr>;

struct SValue {
  enum Kind { Unit, Nil, Cons, Closure, Prob, Int, Bool } kind = Unit;
  SValuePtr head, tail;
  SEnv env;
  std::string self;
  std::vector<std::string> params;
  std::vector<SValuePtr> bound;       // already-applied arguments
  const SurfaceExpr* body = nullptr;  // non-owning
  Rat prob;
  long ival = 0;
  bool bval = false;
};

struct SPath {
  SValuePtr v;
  Rat cost;
  Rat prob;
  int flips = 0;
};

using SPaths = std::vector<SPath>;

inline SValuePtr sv(SValue x) { return std::make_shared<SValue>(std::move(x)); }

inline SPaths one(SValuePtr v, Rat cost = Rat(0)) {
  return {SPath{std::move(v), std::move(cost), Rat(1), 0}};
}

// Converts to the runtime Value type for distribution comparison (only
// first-order values; closures are rejected by returning null).
inline ValuePtr to_value(const SValue& v) {
  switch (v.kind) {
    case SValue::Unit:
      return v_unit();
    case SValue::Nil:
      return v_nil();
    case SValue::Cons: {
      ValuePtr h = to_value(*v.head);
      ValuePtr t = to_value(*v.tail);
      if (!h || !t) return nullptr;
      return v_cons(std::move(h), std::move(t));
    }
    case SValue::Prob:
      return v_prob(v.prob);
    case SValue::Int:
      return v_int(v.ival);
    case SValue::Bool:
      return v_bool(v.bval);
    case SValue::Closure:
      return nullptr;
  }
  return nullptr;
}

inline AnnTypePtr ann_of(const PotAnn& a) { return a.ty; }

SPaths eval(const SEnv& env, const SurfaceExpr& e, int flips_left);

inline SPaths sequence(const SPaths& firsts, const SurfaceExpr& next,
                       const SEnv& env, const std::string& bind,
                       int flips_left) {
  SPaths out;
  for (const auto& r0 : firsts) {
    SEnv inner = env;
    if (!bind.empty() && bind != "_") inner[bind] = r0.v;
    for (auto& r1 : eval(inner, next, flips_left - r0.flips)) {
      out.push_back({r1.v, Rat(r0.cost + r1.cost), Rat(r0.prob * r1.prob),
                     r0.flips + r1.flips});
    }
  }
  return out;
}

inline SPaths apply(const SValuePtr& f, const SValuePtr& arg, int flips_left) {
  if (f->kind != SValue::Closure) throw EvalError(Span{}, "oracle: non-function");
  SValue g = *f;
  g.bound.push_back(arg);
  if (g.bound.size() < g.params.size()) return one(sv(std::move(g)));
  SEnv inner = f->env;
  // Self-reference sees the unapplied closure.
  SValue self = *f;
  self.bound.clear();
  inner[f->self] = sv(std::move(self));
  for (std::size_t i = 0; i < g.params.size(); ++i)
    if (g.params[i] != "_") inner[g.params[i]] = g.bound[i];
  return eval(inner, *f->body, flips_left);
}

inline SPaths flip_branches(const SEnv& env, const Rat& p,
                            const SurfaceExpr& hb, const SurfaceExpr& tb,
                            int flips_left) {
  SPaths out;
  if (flips_left <= 0) return out;
  if (sgn(p) > 0)
    for (auto& r : eval(env, hb, flips_left - 1))
      out.push_back({r.v, r.cost, Rat(p * r.prob), r.flips + 1});
  Rat np = Rat(1) - p;
  if (sgn(np) > 0)
    for (auto& r : eval(env, tb, flips_left - 1))
      out.push_back({r.v, r.cost, Rat(np * r.prob), r.flips + 1});
  return out;
}

inline SPaths eval(const SEnv& env, const SurfaceExpr& e, int flips_left) {
  switch (e.kind) {
    case SurfKind::Var: {
      auto it = env.find(e.name);
      if (it == env.end()) throw EvalError(e.span, "oracle: unbound " + e.name);
      return one(it->second);
    }
    case SurfKind::Unit:
      return one(sv(SValue{}));
    case SurfKind::Nil: {
      SValue v;
      v.kind = SValue::Nil;
      return one(sv(std::move(v)));
    }
    case SurfKind::IntLit: {
      SValue v;
      v.kind = SValue::Int;
      v.ival = e.ival;
      return one(sv(std::move(v)));
    }
    case SurfKind::BoolLit: {
      SValue v;
      v.kind = SValue::Bool;
      v.bval = e.bval;
      return one(sv(std::move(v)));
    }
    case SurfKind::Prob: {
      SValue v;
      v.kind = SValue::Prob;
      v.prob = e.lit;
      return one(sv(std::move(v)));
    }
    case SurfKind::Tick:
      return one(sv(SValue{}), e.lit);
    case SurfKind::Consume: {
      auto it = env.find(e.name);
      if (it == env.end()) throw EvalError(e.span, "oracle: unbound " + e.name);
      ValuePtr rt = to_value(*it->second);
      if (!rt) throw EvalError(e.span, "oracle: consume on closure");
      Rat cost = phi(*rt, e.ctype);
      return one(sv(SValue{}), cost);
    }
    case SurfKind::Cons: {
      SPaths out;
      for (const auto& rh : eval(env, *e.kids[0], flips_left))
        for (const auto& rt : eval(env, *e.kids[1], flips_left - rh.flips)) {
          SValue v;
          v.kind = SValue::Cons;
          v.head = rh.v;
          v.tail = rt.v;
          out.push_back({sv(std::move(v)), Rat(rh.cost + rt.cost),
                         Rat(rh.prob * rt.prob), rh.flips + rt.flips});
        }
      return out;
    }
    case SurfKind::ListLit: {
      // Elements evaluate right to left, as lowered.
      SValue nil;
      nil.kind = SValue::Nil;
      SPaths acc = one(sv(std::move(nil)));
      for (std::size_t i = e.kids.size(); i-- > 0;) {
        SPaths next;
        for (const auto& rt : acc)
          for (const auto& rh :
               eval(env, *e.kids[i], flips_left - rt.flips)) {
            SValue v;
            v.kind = SValue::Cons;
            v.head = rh.v;
            v.tail = rt.v;
            next.push_back({sv(std::move(v)), Rat(rt.cost + rh.cost),
                            Rat(rt.prob * rh.prob), rt.flips + rh.flips});
          }
        acc = std::move(next);
      }
      return acc;
    }
    case SurfKind::App: {
      SPaths out;
      for (const auto& rf : eval(env, *e.kids[0], flips_left))
        for (const auto& ra : eval(env, *e.kids[1], flips_left - rf.flips)) {
          int rem = flips_left - rf.flips - ra.flips;
          for (auto& rr : apply(rf.v, ra.v, rem))
            out.push_back({rr.v, Rat(rf.cost + ra.cost + rr.cost),
                           Rat(rf.prob * ra.prob * rr.prob),
                           rf.flips + ra.flips + rr.flips});
        }
      return out;
    }
    case SurfKind::Cmp: {
      SPaths out;
      for (const auto& rl : eval(env, *e.kids[0], flips_left))
        for (const auto& rr : eval(env, *e.kids[1], flips_left - rl.flips)) {
          if (rl.v->kind != SValue::Int || rr.v->kind != SValue::Int)
            throw EvalError(e.span, "oracle: comparison on non-int");
          bool b = e.op == CmpOp::Lt   ? rl.v->ival < rr.v->ival
                   : e.op == CmpOp::Gt ? rl.v->ival > rr.v->ival
                                       : rl.v->ival == rr.v->ival;
          SValue v;
          v.kind = SValue::Bool;
          v.bval = b;
          out.push_back({sv(std::move(v)), Rat(rl.cost + rr.cost),
                         Rat(rl.prob * rr.prob), rl.flips + rr.flips});
        }
      return out;
    }
    case SurfKind::Let:
      return sequence(eval(env, *e.kids[0], flips_left), *e.kids[1], env,
                      e.bind1, flips_left);
    case SurfKind::Share: {
      auto it = env.find(e.name);
      if (it == env.end()) throw EvalError(e.span, "oracle: unbound " + e.name);
      SEnv inner = env;
      inner[e.bind1] = it->second;
      inner[e.bind2] = it->second;
      return eval(inner, *e.kids[0], flips_left);
    }
    case SurfKind::Fun: {
      SValue v;
      v.kind = SValue::Closure;
      v.env = env;
      v.self = e.name;
      v.params = e.params;
      v.body = e.kids[0].get();
      return one(sv(std::move(v)));
    }
    case SurfKind::MatL: {
      SPaths out;
      for (const auto& rs : eval(env, *e.kids[0], flips_left)) {
        const SurfaceExpr* branch;
        SEnv inner = env;
        if (rs.v->kind == SValue::Nil) {
          branch = e.kids[1].get();
        } else if (rs.v->kind == SValue::Cons) {
          branch = e.kids[2].get();
          if (e.bind1 != "_") inner[e.bind1] = rs.v->head;
          if (e.bind2 != "_") inner[e.bind2] = rs.v->tail;
        } else {
          throw EvalError(e.span, "oracle: match on non-list");
        }
        for (auto& rb : eval(inner, *branch, flips_left - rs.flips))
          out.push_back({rb.v, Rat(rs.cost + rb.cost), Rat(rs.prob * rb.prob),
                         rs.flips + rb.flips});
      }
      return out;
    }
    case SurfKind::MatB:
    case SurfKind::If: {
      SPaths out;
      for (const auto& rs : eval(env, *e.kids[0], flips_left)) {
        if (rs.v->kind != SValue::Bool)
          throw EvalError(e.span, "oracle: condition on non-bool");
        const SurfaceExpr* branch =
            rs.v->bval ? e.kids[1].get() : e.kids[2].get();
        for (auto& rb : eval(env, *branch, flips_left - rs.flips))
          out.push_back({rb.v, Rat(rs.cost + rb.cost), Rat(rs.prob * rb.prob),
                         rs.flips + rb.flips});
      }
      return out;
    }
    case SurfKind::Flip:
      return flip_branches(env, e.lit, *e.kids[0], *e.kids[1], flips_left);
    case SurfKind::FlipSym: {
      auto it = env.find(e.name);
      if (it == env.end()) throw EvalError(e.span, "oracle: unbound " + e.name);
      if (it->second->kind != SValue::Prob)
        throw EvalError(e.span, "oracle: symbolic flip on non-prob");
      return flip_branches(env, it->second->prob, *e.kids[0], *e.kids[1],
                           flips_left);
    }
  }
  throw EvalError(e.span, "oracle: malformed expression");
}

}  // namespace surface_oracle_detail

// Terminating-execution distribution of a surface program with at most
// max_flips coin flips.
inline CostDist surface_enumerate(const SurfaceExpr& program, int max_flips) {
  using namespace surface_oracle_detail;
  CostDist d;
  for (const auto& r : eval({}, program, max_flips)) {
    ValuePtr v = to_value(*r.v);
    REQUIRE(v != nullptr);  // oracle comparisons are first-order only
    d.add(Outcome{std::move(v)}, ExtCost::finite(r.cost), r.prob);
  }
  return d;
}

}  // namespace praml::testing
