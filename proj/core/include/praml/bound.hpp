#pragma once

#include <string>
#include <vector>

#include "praml/ann_type.hpp"
#include "praml/value.hpp"

namespace praml {

// One linear term of a symbolic bound. `depth` counts list-element
// descents from the argument root: depth 0 refers to the argument itself,
// depth 1 to its elements, and so on.
//   Length: coeff * (number of elements at that depth)
//   ProbH : coeff * sum of probability payloads at that depth
//   ProbT : coeff * sum of complements (1 - p) at that depth
enum class BoundTermKind { Length, ProbH, ProbT };

struct BoundTerm {
  int arg = 0;
  int depth = 0;
  BoundTermKind kind = BoundTermKind::Length;
  Rat coeff;
};

struct BoundExpr {
  Rat constant;
  std::vector<BoundTerm> terms;
};

bool equal(const BoundExpr& a, const BoundExpr& b);

// Reads the bound off solved (concrete) argument templates; evaluating
// the result on any argument tuple equals sum(phi) plus the constants.
BoundExpr extract_bound(const std::vector<PotAnn>& solved_args,
                        const Rat& extra_constant);

// Throws TypeError when a value does not match the term structure.
Rat evaluate_bound(const BoundExpr& b, const std::vector<ValuePtr>& args);

// "2*|l|", "|l| + sum 5*p_i", "1".
std::string show(const BoundExpr& b, std::size_t num_args = 1);

}  // namespace praml
