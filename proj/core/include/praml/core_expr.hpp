#pragma once

#include <memory>
#include <set>
#include <string>

#include "praml/ann_type.hpp"
#include "praml/diag.hpp"
#include "praml/rational.hpp"
#include "praml/surface.hpp"

namespace praml {

struct BaseType;
using BaseTypePtr = std::shared_ptr<BaseType>;

// Share-let-normal-form core. Application, cons, comparison and every
// scrutinee position hold variables only; a bound variable occurs at most
// once along each control-flow path, with multiple uses routed through
// explicit Share nodes.
enum class CoreKind {
  Var,      // var
  Unit,
  Nil,
  Cons,     // cons(var, var2)
  MatL,     // match var { [] -> e0 | bind1::bind2 -> e1 }
  Fun,      // fun bind1 bind2 = e0    (bind1: self, bind2: parameter)
  App,      // var var2
  Tick,     // tick lit
  Let,      // let bind1 = e0 in e1
  Share,    // share var as bind1, bind2 in e0
  Flip,     // flip lit { H -> e0 | T -> e1 }
  Prob,     // prob lit
  FlipSym,  // flip var { H -> e0 | T -> e1 }
  Consume,  // consume var : ctype
  IntLit,   // ival
  BoolLit,  // bval
  Cmp,      // var op var2
  If,       // if var then e0 else e1
};

struct CoreExpr;
using CorePtr = std::unique_ptr<CoreExpr>;

struct CoreExpr {
  CoreKind kind;
  Span span;
  std::string var, var2;
  std::string bind1, bind2;
  Rat lit;
  long ival = 0;
  bool bval = false;
  CmpOp op = CmpOp::Lt;
  PotAnn ctype;
  CorePtr e0, e1;
  int site = -1;  // conditional-site id for the profiler (If nodes)

  // Filled in by base-type inference; null until then.
  mutable BaseTypePtr btype;
};

CorePtr make_core(CoreKind kind, Span span);
CorePtr clone(const CoreExpr& e);

// Alpha-equivalence: bound names may differ, free names must agree.
bool alpha_equal(const CoreExpr& a, const CoreExpr& b);

// Re-embedding into the surface language (shares become `share .. as ..`).
// Reserved `%`-prefixed temporaries are renamed to parser-legal fresh
// names so the output reparses.
SurfPtr embed(const CoreExpr& e);

// Number of conditional sites (If nodes) in the expression; their `site`
// fields are labeled 0..n-1 in normalization order.
int count_sites(const CoreExpr& e);

// Free variables ("_" and bound names excluded).
std::set<std::string> free_vars(const CoreExpr& e);

// let %a1 = %f %x0 in ... %ak — applies a function bound as %f to
// arguments bound as %x0..%x{arity-1} in the environment.
CorePtr application_chain(std::size_t arity);

}  // namespace praml
