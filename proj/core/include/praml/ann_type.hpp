#pragma once

#include <memory>
#include <string>
#include <vector>

#include "praml/rational.hpp"

namespace praml {

// One annotation slot: either a concrete non-negative rational or a
// reference to an LP variable. The same algebra serves the checker
// (concrete) and the inferencer (symbolic).
struct Anno {
  int var = -1;  // >= 0: LP variable id
  Rat c;

  Anno() : c(0) {}
  explicit Anno(Rat value) : c(std::move(value)) {}
  static Anno variable(int id) {
    Anno a;
    a.var = id;
    return a;
  }
  bool is_var() const { return var >= 0; }
  const Rat& value() const;  // requires !is_var()
};

struct AnnType;
using AnnTypePtr = std::shared_ptr<const AnnType>;

// ⟨τ, q⟩: a type paired with constant potential.
struct PotAnn {
  AnnTypePtr ty;
  Anno q;
};

enum class TyKind { Unit, Int, Bool, Prob, List, Arrow };

// Annotated types. Lists carry a per-element annotation (L^q(τ) is the
// compact form of a list of ⟨τ, q⟩), probabilities carry the heads/tails
// pair, arrows relate two annotated pairs. Int and bool have no slots and
// always hold zero potential.
struct AnnType {
  TyKind kind = TyKind::Unit;
  Anno qh, qt;          // Prob
  AnnTypePtr elem;      // List
  Anno per_elem;        // List
  PotAnn arg, res;      // Arrow

  static AnnTypePtr unit();
  static AnnTypePtr tint();
  static AnnTypePtr tbool();
  static AnnTypePtr prob(Anno qh, Anno qt);
  static AnnTypePtr list(AnnTypePtr elem, Anno per_elem);
  static AnnTypePtr arrow(PotAnn arg, PotAnn res);
};

bool concrete(const AnnType& t);
bool concrete(const PotAnn& a);

// Structural equality including annotations (vars compare by id).
bool equal(const AnnType& a, const AnnType& b);
bool equal(const Anno& a, const Anno& b);

// Prints L^q(τ), prob{qH}{qT}, <τ, q>; arrows print as <τ,q> -> <τ,q>.
std::string show(const AnnType& t);
std::string show(const PotAnn& a);
std::string show(const Anno& a);

// Collects every annotation slot of a type left-to-right (lists before
// their element, arrow argument before result). Used for objectives and
// solution substitution.
enum class SlotKind { Const, PerElem, ProbH, ProbT };
struct Slot {
  SlotKind kind;
  Anno anno;
};
void collect_slots(const AnnType& t, std::vector<Slot>& out);
void collect_slots(const PotAnn& a, std::vector<Slot>& out);

// Rebuilds the type with every annotation variable replaced via the map
// (var id -> rational). Unmapped variables become 0.
AnnTypePtr substitute(const AnnTypePtr& t, const std::vector<Rat>& assignment);
PotAnn substitute(const PotAnn& a, const std::vector<Rat>& assignment);

}  // namespace praml
