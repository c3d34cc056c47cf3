#pragma once

#include <map>
#include <string>

#include "praml/ann_type.hpp"
#include "praml/base_types.hpp"
#include "praml/constraints.hpp"
#include "praml/core_expr.hpp"

namespace praml {

// Fresh annotation template over a base-type skeleton.
AnnTypePtr annotate(const BaseType& t, VarRegistry& reg);

struct GenResult {
  VarRegistry vars;
  ConstraintSet constraints;
  PotAnn root;  // template for the program value
  Anno q0;      // top-level constant potential
};

// Walks the typed core expression and emits one linear rule instance per
// node (structural slack is inlined at leaves, applications and branch
// joins; subtyping at variable use and application). Every constraint
// carries the rule name and source span. Recursive functions use a single
// annotation for all call sites; captured context is zeroed.
GenResult gen_constraints(const CoreExpr& typed_program);

}  // namespace praml
