#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "praml/analysis.hpp"
#include "praml/normalize.hpp"
#include "praml/parser.hpp"
#include "praml/trace_interp.hpp"

namespace praml::testing {

inline std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

inline std::string corpus_source(const std::string& name) {
  return slurp(std::string(PRAML_CORPUS_DIR) + "/" + name + ".praml");
}

inline CorePtr load_core(const std::string& name) {
  auto surf = parse_program(corpus_source(name));
  return normalize(*surf);
}

struct Applied {
  CorePtr expr;
  Env env;
};

// Applies a (deterministically evaluated) program to argument values.
inline Applied apply_values(const CoreExpr& program,
                            const std::vector<ValuePtr>& inputs) {
  Applied a;
  if (inputs.empty()) {
    a.expr = clone(program);
    return a;
  }
  DetRun run = run_deterministic({}, program, nullptr);
  a.env = env_bind({}, "%f", run.value);
  for (std::size_t i = 0; i < inputs.size(); ++i)
    a.env = env_bind(a.env, "%x" + std::to_string(i), inputs[i]);
  a.expr = application_chain(inputs.size());
  return a;
}

inline ValuePtr unit_list(int n) {
  std::vector<ValuePtr> elems(n, v_unit());
  return v_list(elems);
}

// Random concrete values inhabiting an annotated-type skeleton.
struct ValueGen {
  std::mt19937_64 rng;
  explicit ValueGen(unsigned long long seed) : rng(seed) {}

  Rat random_prob() {
    std::uniform_int_distribution<int> num(0, 16);
    return rat(num(rng), 16);
  }

  ValuePtr generate(const AnnType& t, int max_len = 5) {
    switch (t.kind) {
      case TyKind::Unit:
        return v_unit();
      case TyKind::Int: {
        std::uniform_int_distribution<long> d(-20, 20);
        return v_int(d(rng));
      }
      case TyKind::Bool:
        return v_bool(rng() & 1);
      case TyKind::Prob:
        return v_prob(random_prob());
      case TyKind::List: {
        std::uniform_int_distribution<int> len(0, max_len);
        int n = len(rng);
        std::vector<ValuePtr> elems;
        for (int i = 0; i < n; ++i) elems.push_back(generate(*t.elem, max_len));
        return v_list(elems);
      }
      case TyKind::Arrow:
        return nullptr;  // callers skip arrow-typed arguments
    }
    return v_unit();
  }
};

}  // namespace praml::testing
