#pragma once

#include <memory>
#include <string>

#include "praml/core_expr.hpp"

namespace praml {

enum class BaseKind { Unit, Int, Bool, Prob, List, Arrow, Var };

// Simple monomorphic types; annotation-free skeletons of the annotated
// types. Var only appears during unification.
struct BaseType {
  BaseKind kind = BaseKind::Unit;
  BaseTypePtr a, b;  // List element / Arrow argument, result
  int tv = -1;

  static BaseTypePtr make(BaseKind k, BaseTypePtr a = nullptr,
                          BaseTypePtr b = nullptr);
  static BaseTypePtr var(int id);
};

std::string show(const BaseType& t);
bool equal_base(const BaseType& a, const BaseType& b);

// Monomorphic base-type inference: unification with occurs check, no
// polymorphism, recursion typed monomorphically. Unconstrained type
// variables default to unit. Fills every node's btype and returns the
// program's type. Throws TypeError with the offending span.
BaseTypePtr infer_base_types(const CoreExpr& e);

}  // namespace praml
