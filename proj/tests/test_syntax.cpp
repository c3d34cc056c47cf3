#include <doctest.h>

#include "helpers.hpp"
#include "praml/pretty.hpp"
#include "surface_oracle.hpp"

using namespace praml;
using namespace praml::testing;

TEST_CASE("basic grammar productions") {
  auto t = parse_program("tick 1");
  CHECK(t->kind == SurfKind::Tick);
  CHECK(t->lit == rat(1));

  auto f = parse_program("flip 1/2 { H -> tick 2 | T -> let _ = tick 1 in tick 1 }");
  CHECK(f->kind == SurfKind::Flip);
  CHECK(f->lit == rat(1, 2));

  auto m = parse_program("fun f l = match flip 0.5 with | T -> 2 | H -> 1");
  REQUIRE(m->kind == SurfKind::Fun);
  CHECK(m->kids[0]->kind == SurfKind::Flip);
  // Branch order in the source does not matter.
  CHECK(m->kids[0]->kids[0]->ival == 1);
}

TEST_CASE("literal range errors") {
  CHECK_THROWS_WITH_AS(parse_program("tick -1"),
                       doctest::Contains("negative tick rejected"), ParseError);
  CHECK_THROWS_WITH_AS(parse_program("flip 1.5 { H -> () | T -> () }"),
                       doctest::Contains("probability out of range"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_program("prob 9/8"),
                       doctest::Contains("probability out of range"),
                       ParseError);
  CHECK_THROWS_AS(parse_program("%tmp1"), ParseError);
}

TEST_CASE("the bernoulli listing parses to the expected shape") {
  auto p = parse_program(corpus_source("bernoulli"));
  REQUIRE(p->kind == SurfKind::Let);
  const SurfaceExpr& fn = *p->kids[0];
  REQUIRE(fn.kind == SurfKind::Fun);
  CHECK(fn.name == "bernoulli");
  REQUIRE(fn.kids[0]->kind == SurfKind::MatL);
  const SurfaceExpr& cons_branch = *fn.kids[0]->kids[2];
  CHECK(cons_branch.kind == SurfKind::Flip);
}

TEST_CASE("scope errors carry a span") {
  auto p = parse_program("let x = () in y");
  try {
    normalize(*p);
    FAIL("expected a scope error");
  } catch (const ScopeError& e) {
    CHECK(e.span().line == 1);
    CHECK(std::string(e.what()).find("unbound variable 'y'") !=
          std::string::npos);
  }
}

TEST_CASE("parse/pretty round trip on the corpus") {
  for (const char* name :
       {"bernoulli", "brdwalk", "rdwalk", "sample_fast", "sample_slow", "dice",
        "binomial", "poisson_binomial", "poisson_binomial_E", "geometric",
        "negative_binomial", "von_neumann", "isort", "isort_t", "diverge",
        "exists2"}) {
    CAPTURE(name);
    auto p1 = parse_program(corpus_source(name));
    auto p2 = parse_program(pretty(*p1));
    CHECK(equal(*p1, *p2));
  }
}

TEST_CASE("normalization is idempotent up to alpha-equivalence") {
  for (const char* name : {"bernoulli", "brdwalk", "rdwalk", "dice", "isort",
                           "negative_binomial", "exists2"}) {
    CAPTURE(name);
    auto p = parse_program(corpus_source(name));
    auto c1 = normalize(*p);
    auto c2 = normalize(*embed(*c1));
    CHECK(alpha_equal(*c1, *c2));
    CHECK(check_core_invariants(*c1).empty());
  }
}

TEST_CASE("an expression already in normal form is unchanged") {
  auto p = parse_program("let x = () in x");
  auto c = normalize(*p);
  CHECK(alpha_equal(*c, *normalize(*embed(*c))));
  CHECK(c->kind == CoreKind::Let);
  CHECK(c->e0->kind == CoreKind::Unit);
}

TEST_CASE("compound application arguments are let-bound") {
  // f (g x) => let t = g x in f t
  auto p = parse_program("fun q f = fun w g = fun e x = f (g x)");
  auto c = normalize(*p);
  const CoreExpr* body = c.get();
  while (body->kind == CoreKind::Fun) body = body->e0.get();
  REQUIRE(body->kind == CoreKind::Let);
  CHECK(body->e0->kind == CoreKind::App);  // g x
  CHECK(body->e1->kind == CoreKind::App);  // f t
  CHECK(body->e1->var2 == body->bind1);
}

TEST_CASE("multiple uses of a variable go through a share node") {
  // cons(x, x) => share x as x1, x2 in cons(x1, x2)
  auto p = parse_program("fun f x = x::x");
  auto c = normalize(*p);
  REQUIRE(c->kind == CoreKind::Fun);
  const CoreExpr& body = *c->e0;
  REQUIRE(body.kind == CoreKind::Share);
  CHECK(body.var == "x");
  CHECK(body.e0->kind == CoreKind::Cons);
  CHECK(body.e0->var == body.bind1);
  CHECK(body.e0->var2 == body.bind2);
  CHECK(check_core_invariants(*c).empty());
}

TEST_CASE("user-written share nodes parse and re-normalize") {
  auto p = parse_program("fun f x = share x as a, b in a::b");
  auto c = normalize(*p);
  CHECK(check_core_invariants(*c).empty());
  CHECK(c->e0->kind == CoreKind::Share);
}

// Normalization preserves the truncated cost distribution at every trace
// bound; the oracle interprets the surface tree directly.
TEST_CASE("normalization preserves cost distributions") {
  struct Case {
    const char* name;
    const char* input;
  };
  const Case cases[] = {
      {"bernoulli", "[();();()]"},
      {"rdwalk", "[0.2]"},
      {"dice", "()"},
      {"sample_fast", "()"},
      {"isort", "[2;1;3]"},
      {"poisson_binomial_E", "[0.5;0.25]"},
      {"diverge", "()"},
  };
  for (const auto& cs : cases) {
    CAPTURE(cs.name);
    std::string applied =
        "(" + corpus_source(cs.name) + ") " + std::string(cs.input);
    auto surf = parse_program(applied);
    auto core = normalize(*surf);
    for (int bound = 0; bound <= 6; ++bound) {
      CostDist direct = surface_enumerate(*surf, bound);
      CostDist lowered = enumerate({}, *core, bound);
      CAPTURE(bound);
      CHECK(direct == lowered);
    }
  }
}
EOF
