#pragma once

#include <string>

#include "praml/surface.hpp"

namespace praml {

// Parses a whole program (one expression). Throws ParseError with a span
// on malformed input, including `tick` with a negative literal and
// flip/prob literals outside [0,1].
SurfPtr parse_program(const std::string& text);

// Parses a standalone annotated-type literal, e.g. "prob{0}{1}",
// "L^2(unit)", "<L^1(prob{5}{0}), 0>".
PotAnn parse_anntype(const std::string& text);

}  // namespace praml
