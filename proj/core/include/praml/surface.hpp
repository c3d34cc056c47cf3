#pragma once

#include <memory>
#include <string>
#include <vector>

#include "praml/ann_type.hpp"
#include "praml/diag.hpp"
#include "praml/rational.hpp"

namespace praml {

enum class CmpOp { Lt, Gt, Eq };

// Surface AST produced by the parser. `let rec f x y = e`, list literals
// and multi-argument functions are still visible here; normalization
// lowers everything into the core form.
enum class SurfKind {
  Var,       // name
  Unit,
  Nil,
  Cons,      // kids[0] :: kids[1]
  ListLit,   // [kids...]
  MatL,      // match kids[0] with [] -> kids[1] | bind1::bind2 -> kids[2]
  MatB,      // match kids[0] with true -> kids[1] | false -> kids[2]
  Fun,       // fun name params... = kids[0]  (normalization curries)
  App,       // kids[0] kids[1]
  Tick,      // tick lit
  Let,       // let bind1 = kids[0] in kids[1]  (bind1 may be "_")
  Share,     // share name as bind1, bind2 in kids[0]
  Flip,      // match flip lit with H -> kids[0] | T -> kids[1]
  Prob,      // prob lit
  FlipSym,   // match flip name with H -> kids[0] | T -> kids[1]
  Consume,   // consume name : ctype
  IntLit,    // ival
  BoolLit,   // bval
  Cmp,       // kids[0] op kids[1]
  If,        // if kids[0] then kids[1] else kids[2]
};

struct SurfaceExpr;
using SurfPtr = std::unique_ptr<SurfaceExpr>;

struct SurfaceExpr {
  SurfKind kind;
  Span span;
  std::string name;
  std::string bind1, bind2;
  Rat lit;
  long ival = 0;
  bool bval = false;
  CmpOp op = CmpOp::Lt;
  PotAnn ctype;                     // Consume
  std::vector<std::string> params;  // Fun parameters ("_" for wildcard/unit)
  std::vector<SurfPtr> kids;
};

SurfPtr make_surface(SurfKind kind, Span span);
SurfPtr clone(const SurfaceExpr& e);

// Structural equality (names compared literally; spans ignored).
bool equal(const SurfaceExpr& a, const SurfaceExpr& b);

}  // namespace praml
