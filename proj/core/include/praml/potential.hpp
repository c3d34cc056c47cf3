#pragma once

#include <map>
#include <string>
#include <utility>

#include "praml/ann_type.hpp"
#include "praml/constraints.hpp"
#include "praml/value.hpp"

namespace praml {

// Structural value typing (annotations ignored). Function closures check
// shallowly against arrow types here; the existential context premise is
// discharged separately by the checker in the inference module.
bool value_fits(const Value& v, const AnnType& t);

// Potential of a value under a concretely-annotated type:
//   phi(unit)=0, phi closure = 0, lists sum per-element annotations and
//   element potentials, phi(prob p : prob{qH}{qT}) = qH*p + qT*(1-p).
// Throws TypeError when the value does not inhabit the type.
Rat phi(const Value& v, const AnnType& t);
Rat phi(const Value& v, const PotAnn& a);

using TypingContext = std::map<std::string, AnnTypePtr>;

// Sum of phi over the context bindings. Throws on a missing binding.
Rat phi_env(const Env& env, const TypingContext& ctx);

// Sharing: fresh types of the same shape whose annotations additively
// split t's (arrows are duplicated unchanged). Emits the split equations.
std::pair<AnnTypePtr, AnnTypePtr> share_type(const AnnTypePtr& t,
                                             VarRegistry& reg,
                                             ConstraintSet& cs,
                                             const std::string& tag, Span span);

// p x t: annotation-wise multiplication; arrows unchanged. Requires
// concrete annotations (the linear system cannot scale symbolically).
AnnTypePtr scale_type(const Rat& p, const AnnTypePtr& t);

// Every annotation becomes 0; arrows unchanged.
AnnTypePtr zero_type(const AnnTypePtr& t);

// Annotation-wise sum of two same-shaped concrete types (a concrete
// sharing witness in reverse). Arrows must be identical.
AnnTypePtr add_types(const AnnTypePtr& a, const AnnTypePtr& b);

// Subtyping t1 <: t2: emits q1 >= q2 per slot, componentwise on prob,
// contravariant arrow arguments. Returns false on skeleton mismatch.
bool subtype_constraints(const AnnTypePtr& t1, const AnnTypePtr& t2,
                         VarRegistry& reg, ConstraintSet& cs,
                         const std::string& tag, Span span);
bool subtype_constraints(const PotAnn& a1, const PotAnn& a2, VarRegistry& reg,
                         ConstraintSet& cs, const std::string& tag, Span span);

// Concrete subtyping check (no constraint emission).
bool subtype_holds(const AnnTypePtr& t1, const AnnTypePtr& t2);

}  // namespace praml
