#pragma once

#include <memory>
#include <string>
#include <vector>

#include "praml/core_expr.hpp"
#include "praml/rational.hpp"

namespace praml {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

// Persistent environment: O(1) extension, shared tails. Lookup takes the
// first binding (shadowing).
struct EnvNode;
using Env = std::shared_ptr<const EnvNode>;
struct EnvNode {
  std::string name;
  ValuePtr v;
  Env next;
};

Env env_bind(const Env& env, std::string name, ValuePtr v);
ValuePtr env_lookup(const Env& env, const std::string& name);  // null if absent

enum class ValKind { Unit, Nil, Cons, Closure, Prob, Int, Bool };

// Runtime values. Closures keep a pruned environment (free variables of
// the function only, in sorted order) and a non-owning pointer into the
// program tree; values must not outlive the CoreExpr they came from.
struct Value {
  ValKind kind = ValKind::Unit;
  ValuePtr head, tail;  // Cons
  long spine = 0;       // Cons: list length when the spine is proper
  Env env;              // Closure
  std::string self, param;
  const CoreExpr* body = nullptr;
  Rat prob;  // Prob payload
  long ival = 0;
  bool bval = false;
};

ValuePtr v_unit();
ValuePtr v_nil();
ValuePtr v_cons(ValuePtr head, ValuePtr tail);
ValuePtr v_closure(Env captured, std::string self, std::string param,
                   const CoreExpr* body);
ValuePtr v_prob(Rat p);
ValuePtr v_int(long i);
ValuePtr v_bool(bool b);
ValuePtr v_list(const std::vector<ValuePtr>& elems);

// Total order; closures order by (self, param, printed body, environment).
int compare(const Value& a, const Value& b);
inline bool equal(const Value& a, const Value& b) { return compare(a, b) == 0; }

// Length of a proper list value; -1 if not a list.
long list_length(const Value& v);

// "()", "[]", "[(); ()]", "3", "true", "1/2", "<fun>".
std::string show(const Value& v);

// Parses a value literal: unit, bool, int, decimal/fraction (probability),
// and list/cons forms thereof. Throws ParseError / EvalError.
ValuePtr value_from_literal(const std::string& text);

}  // namespace praml
