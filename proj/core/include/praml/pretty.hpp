#pragma once

#include <string>

#include "praml/core_expr.hpp"
#include "praml/surface.hpp"

namespace praml {

// Re-parseable program text. `parse(pretty(parse(t)))` is structurally
// equal to `parse(t)`.
std::string pretty(const SurfaceExpr& e);

// Convenience: embed + pretty.
std::string pretty(const CoreExpr& e);

}  // namespace praml
