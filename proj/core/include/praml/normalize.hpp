#pragma once

#include "praml/core_expr.hpp"
#include "praml/surface.hpp"

namespace praml {

// Lowers a surface program into share-let-normal form:
//   - list literals, bool matches and multi-parameter functions desugar;
//   - compound subterms in variable positions are let-bound to fresh
//     `%tmp` temporaries, left-to-right;
//   - a variable used more than once along a control-flow path is routed
//     through a Share node inserted at the lowest node where the uses
//     meet (children are processed first).
// Conditional sites are labeled 0..n-1 in normalization order.
// Throws ScopeError on unbound variables.
CorePtr normalize(const SurfaceExpr& e);

// Affine-occurrence path count of free variable `v` in `e`: sequential
// positions add, parallel branches take the maximum.
int free_path_count(const CoreExpr& e, const std::string& v);

// Checks both core invariants (atomic variable positions hold by
// construction; this verifies affine occurrences). Returns a diagnostic
// string, empty when the expression is well-formed.
std::string check_core_invariants(const CoreExpr& e);

}  // namespace praml
