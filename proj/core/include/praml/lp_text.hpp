#pragma once

#include <string>

#include "praml/lp.hpp"

namespace praml {

// Textual LP dump: objective, constraint rows with provenance brackets,
// bounds and variable-name sections. Rationals print as a/b.
std::string lp_serialize(const LinearProgram& lp);

// Parses the dump format back. Throws Error on malformed input.
LinearProgram lp_parse(const std::string& text);

}  // namespace praml
