#include "praml/value.hpp"

#include "praml/parser.hpp"
#include "praml/pretty.hpp"

namespace praml {

Env env_bind(const Env& env, std::string name, ValuePtr v) {
  auto n = std::make_shared<EnvNode>();
  n->name = std::move(name);
  n->v = std::move(v);
  n->next = env;
  return n;
}

ValuePtr env_lookup(const Env& env, const std::string& name) {
  for (const EnvNode* n = env.get(); n; n = n->next.get())
    if (n->name == name) return n->v;
  return nullptr;
}

ValuePtr v_unit() {
  static const ValuePtr u = std::make_shared<Value>();
  return u;
}
ValuePtr v_nil() {
  static const ValuePtr n = [] {
    auto v = std::make_shared<Value>();
    v->kind = ValKind::Nil;
    return v;
  }();
  return n;
}
ValuePtr v_cons(ValuePtr head, ValuePtr tail) {
  auto v = std::make_shared<Value>();
  v->kind = ValKind::Cons;
  v->spine = tail->kind == ValKind::Nil    ? 1
             : tail->kind == ValKind::Cons ? tail->spine + 1
                                           : -1;
  v->head = std::move(head);
  v->tail = std::move(tail);
  return v;
}
ValuePtr v_closure(Env captured, std::string self, std::string param,
                   const CoreExpr* body) {
  auto v = std::make_shared<Value>();
  v->kind = ValKind::Closure;
  v->env = std::move(captured);
  v->self = std::move(self);
  v->param = std::move(param);
  v->body = body;
  return v;
}
ValuePtr v_prob(Rat p) {
  auto v = std::make_shared<Value>();
  v->kind = ValKind::Prob;
  v->prob = std::move(p);
  return v;
}
ValuePtr v_int(long i) {
  auto v = std::make_shared<Value>();
  v->kind = ValKind::Int;
  v->ival = i;
  return v;
}
ValuePtr v_bool(bool b) {
  auto v = std::make_shared<Value>();
  v->kind = ValKind::Bool;
  v->bval = b;
  return v;
}
ValuePtr v_list(const std::vector<ValuePtr>& elems) {
  ValuePtr acc = v_nil();
  for (auto it = elems.rbegin(); it != elems.rend(); ++it)
    acc = v_cons(*it, acc);
  return acc;
}

long list_length(const Value& v) {
  if (v.kind == ValKind::Nil) return 0;
  if (v.kind == ValKind::Cons) return v.spine;
  return -1;
}

namespace {

int env_compare(const Env& a, const Env& b) {
  const EnvNode* pa = a.get();
  const EnvNode* pb = b.get();
  while (pa && pb) {
    if (int c = pa->name.compare(pb->name)) return c;
    if (int c = compare(*pa->v, *pb->v)) return c;
    pa = pa->next.get();
    pb = pb->next.get();
  }
  return pa ? 1 : pb ? -1 : 0;
}

}  // namespace

int compare(const Value& a, const Value& b) {
  auto rank = [](ValKind k) { return static_cast<int>(k); };
  if (rank(a.kind) != rank(b.kind)) return rank(a.kind) < rank(b.kind) ? -1 : 1;
  switch (a.kind) {
    case ValKind::Unit:
    case ValKind::Nil:
      return 0;
    case ValKind::Cons: {
      if (int c = compare(*a.head, *b.head)) return c;
      return compare(*a.tail, *b.tail);
    }
    case ValKind::Closure: {
      if (int c = a.self.compare(b.self)) return c;
      if (int c = a.param.compare(b.param)) return c;
      if (a.body != b.body) {
        if (int c = pretty(*a.body).compare(pretty(*b.body))) return c;
      }
      return env_compare(a.env, b.env);
    }
    case ValKind::Prob:
      return cmp(a.prob, b.prob);
    case ValKind::Int:
      return a.ival < b.ival ? -1 : a.ival > b.ival ? 1 : 0;
    case ValKind::Bool:
      return a.bval == b.bval ? 0 : (a.bval ? 1 : -1);
  }
  return 0;
}

std::string show(const Value& v) {
  switch (v.kind) {
    case ValKind::Unit:
      return "()";
    case ValKind::Nil:
      return "[]";
    case ValKind::Cons: {
      std::string s = "[";
      const Value* cur = &v;
      bool first = true;
      while (cur->kind == ValKind::Cons) {
        if (!first) s += "; ";
        s += show(*cur->head);
        first = false;
        cur = cur->tail.get();
      }
      if (cur->kind != ValKind::Nil) s += " | " + show(*cur);
      return s + "]";
    }
    case ValKind::Closure:
      return "<fun>";
    case ValKind::Prob:
      return to_string(v.prob);
    case ValKind::Int:
      return std::to_string(v.ival);
    case ValKind::Bool:
      return v.bval ? "true" : "false";
  }
  return "?";
}

namespace {

ValuePtr literal_value(const SurfaceExpr& e) {
  switch (e.kind) {
    case SurfKind::Unit:
      return v_unit();
    case SurfKind::Nil:
      return v_nil();
    case SurfKind::IntLit:
      return v_int(e.ival);
    case SurfKind::BoolLit:
      return v_bool(e.bval);
    case SurfKind::Prob:
      return v_prob(e.lit);
    case SurfKind::Cons:
      return v_cons(literal_value(*e.kids[0]), literal_value(*e.kids[1]));
    case SurfKind::ListLit: {
      std::vector<ValuePtr> elems;
      for (const auto& k : e.kids) elems.push_back(literal_value(*k));
      return v_list(elems);
    }
    default:
      throw EvalError(e.span, "not a value literal");
  }
}

}  // namespace

ValuePtr value_from_literal(const std::string& text) {
  auto e = parse_program(text);
  return literal_value(*e);
}

}  // namespace praml
