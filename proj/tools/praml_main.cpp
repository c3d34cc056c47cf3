#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "golden.hpp"
#include "praml/analysis.hpp"
#include "praml/dist_interp.hpp"
#include "praml/lp_text.hpp"
#include "praml/normalize.hpp"
#include "praml/parser.hpp"
#include "praml/pretty.hpp"
#include "praml/profiler.hpp"
#include "praml/trace_interp.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace praml;

namespace {

// Exit codes: 0 pass, 1 bound mismatch, 2 soundness violation,
// 3 input error.
constexpr int kExitOk = 0;
constexpr int kExitBoundMismatch = 1;
constexpr int kExitSoundness = 2;
constexpr int kExitInput = 3;

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("io error", Span{}, "cannot read '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("io error", Span{}, "cannot write '" + path + "'");
  f << text;
}

json bound_json(const BoundExpr& b, std::size_t num_args) {
  json terms = json::array();
  for (const BoundTerm& t : b.terms) {
    const char* kind = t.kind == BoundTermKind::Length  ? "length"
                       : t.kind == BoundTermKind::ProbH ? "prob_h"
                                                        : "prob_t";
    terms.push_back({{"arg", t.arg},
                     {"depth", t.depth},
                     {"kind", kind},
                     {"coeff", to_string(t.coeff)}});
  }
  return json{{"text", show(b, num_args)},
              {"constant", to_string(b.constant)},
              {"terms", terms}};
}

struct LoadedProgram {
  CorePtr core;
  ValuePtr value;  // deterministic top-level evaluation
};

LoadedProgram load_program(const std::string& path) {
  auto surf = parse_program(slurp(path));
  LoadedProgram lp;
  lp.core = normalize(*surf);
  return lp;
}

// Environment and expression applying the program value to the inputs.
struct Applied {
  CorePtr expr;
  Env env;
};

Applied apply_inputs(const LoadedProgram& prog,
                     const std::vector<ValuePtr>& inputs) {
  Applied a;
  if (inputs.empty()) {
    a.expr = clone(*prog.core);
    return a;
  }
  DetRun run = run_deterministic({}, *prog.core, nullptr);
  a.env = env_bind({}, "%f", run.value);
  for (std::size_t i = 0; i < inputs.size(); ++i)
    a.env = env_bind(a.env, "%x" + std::to_string(i), inputs[i]);
  a.expr = application_chain(inputs.size());
  return a;
}

std::vector<ValuePtr> parse_inputs(const std::vector<std::string>& lits) {
  std::vector<ValuePtr> vals;
  for (const auto& s : lits) vals.push_back(value_from_literal(s));
  return vals;
}

json dist_json(const CostDist& d) {
  json arr = json::array();
  for (const auto& [k, p] : d.entries()) {
    json e;
    e["value"] = k.out.diverged() ? "<diverge>" : show(*k.out.v);
    e["cost"] = k.cost.inf ? "inf" : to_string(k.cost.q);
    e["prob"] = to_string(p);
    arr.push_back(std::move(e));
  }
  return arr;
}

// ---- analyze ----------------------------------------------------------

int cmd_analyze(const std::string& file, const std::string& emit_lp,
                bool as_json) {
  Analysis a = analyze_source(slurp(file));
  if (!emit_lp.empty()) spit(emit_lp, lp_serialize(analysis_lp(a)));
  if (as_json) {
    json out;
    out["file"] = file;
    out["feasible"] = a.feasible;
    out["constraints"] = a.num_constraints;
    out["variables"] = a.num_vars;
    out["solve_seconds"] = a.solve_seconds;
    if (a.feasible) {
      out["type"] = show(*a.solved_root.ty);
      out["bound"] = bound_json(a.bound, a.solved_args.size());
    } else {
      out["bound"] = nullptr;
      out["infeasible_core"] = a.infeasible_core;
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "file:        " << file << "\n";
  std::cout << "constraints: " << a.num_constraints << "\n";
  std::cout << "solve time:  " << a.solve_seconds << "s\n";
  if (!a.feasible) {
    std::cout << "bound:       no linear bound (LP infeasible)\n";
    std::cout << "irreducible constraint subset:\n";
    for (const auto& t : a.infeasible_core) std::cout << "  " << t << "\n";
    return kExitOk;
  }
  std::cout << "type:        " << show(*a.solved_root.ty) << "\n";
  std::cout << "bound:       " << show(a.bound, a.solved_args.size()) << "\n";
  return kExitOk;
}

// ---- eval -------------------------------------------------------------

int cmd_eval(const std::string& file, const std::vector<std::string>& lits,
             int depth, bool as_json) {
  LoadedProgram prog = load_program(file);
  Applied app = apply_inputs(prog, parse_inputs(lits));
  CostDist sub = eval_dist(app.env, *app.expr, depth);
  CostDist full = eval_partial_dist(app.env, *app.expr, depth);
  auto expected = sub.expected_cost();
  Rat residual = full.diverging_mass();
  if (as_json) {
    json out;
    out["depth"] = depth;
    out["distribution"] = dist_json(sub);
    out["expected_cost"] = expected ? to_string(*expected) : "inf";
    out["residual_mass"] = to_string(residual);
    out["support"] = sub.support_size();
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << dist_json(sub).dump(2) << "\n";
    std::cout << "expected cost: "
              << (expected ? to_pretty_string(*expected) : "inf") << "\n";
    std::cout << "residual mass: " << to_pretty_string(residual) << "\n";
    std::cout << "support size:  " << sub.support_size() << "\n";
  }
  return kExitOk;
}

// ---- sample -----------------------------------------------------------

int cmd_sample(const std::string& file, const std::vector<std::string>& lits,
               long trials, unsigned long long seed,
               unsigned long long budget) {
  LoadedProgram prog = load_program(file);
  Applied app = apply_inputs(prog, parse_inputs(lits));
  EvalLimits limits;
  limits.step_budget = budget;
  long exhausted = 0;
  Rat total(0);
  for (long t = 0; t < trials; ++t) {
    SampleOutcome out = sample(app.env, *app.expr, seed + t, limits);
    json line;
    if (out.budget_exhausted) {
      ++exhausted;
      line["budget_exhausted"] = true;
    } else {
      line["trace"] = trace_to_string(out.result->trace);
      line["cost"] = to_string(out.result->cost);
      line["prob"] = to_string(out.result->prob);
      total += out.result->cost;
    }
    std::cout << line.dump() << "\n";
  }
  long done = trials - exhausted;
  json summary;
  summary["trials"] = trials;
  summary["budget_exhausted"] = exhausted;
  if (done > 0) summary["mean_cost"] = to_string(Rat(total / done));
  std::cout << summary.dump() << "\n";
  return kExitOk;
}

// ---- check ------------------------------------------------------------

int cmd_check(const std::string& file, const std::vector<std::string>& lits,
              int depth, long trials, unsigned long long seed,
              unsigned long long budget, bool as_json) {
  std::string source = slurp(file);
  Analysis a = analyze_source(source);
  if (!a.feasible) {
    std::cerr << "check: no linear bound for '" << file << "'\n";
    return kExitInput;
  }
  auto inputs = parse_inputs(lits);
  if (inputs.size() != a.solved_args.size()) {
    std::cerr << "check: program takes " << a.solved_args.size()
              << " argument(s), got " << inputs.size() << "\n";
    return kExitInput;
  }

  LoadedProgram prog;
  prog.core = clone(*a.core);
  Applied app = apply_inputs(prog, inputs);
  Rat bound = evaluate_bound(a.bound, inputs);

  json report;
  report["file"] = file;
  report["bound"] = to_string(bound);
  json depths = json::array();
  bool violated = false;
  Rat prev_residual(1);
  for (int n = 0; n <= depth; ++n) {
    CostDist full = eval_partial_dist(app.env, *app.expr, n);
    auto h = expected_h(full, a.solved_result);
    Rat residual = full.diverging_mass();
    bool ok = h.has_value() && *h <= bound;
    json row;
    row["depth"] = n;
    row["expected_h"] = h ? to_string(*h) : "inf";
    row["residual_mass"] = to_string(residual);
    row["ok"] = ok;
    depths.push_back(row);
    if (!ok) violated = true;
    if (residual > prev_residual) violated = true;  // trend must not grow
    prev_residual = residual;
  }
  report["depths"] = depths;

  EvalLimits limits;
  limits.step_budget = budget;
  long exhausted = 0, done = 0;
  double sum = 0, sq = 0;
  for (long t = 0; t < trials; ++t) {
    SampleOutcome out = sample(app.env, *app.expr, seed + t, limits);
    if (out.budget_exhausted) {
      ++exhausted;
      continue;
    }
    double c = out.result->cost.get_d();
    sum += c;
    sq += c * c;
    ++done;
  }
  if (done > 0) {
    double mean = sum / done;
    double var = sq / done - mean * mean;
    if (var < 0) var = 0;
    double margin = 4.0 * std::sqrt(var / done);
    report["mc_trials"] = done;
    report["mc_budget_exhausted"] = exhausted;
    report["mc_mean"] = mean;
    report["mc_margin"] = margin;
    if (mean > bound.get_d() + margin) violated = true;
  }
  report["pass"] = !violated;

  if (as_json)
    std::cout << report.dump(2) << "\n";
  else {
    std::cout << "bound: " << to_pretty_string(bound) << "\n";
    for (const auto& row : depths)
      std::cout << "  depth " << row["depth"] << ": h = "
                << row["expected_h"].get<std::string>() << " residual = "
                << row["residual_mass"].get<std::string>()
                << (row["ok"].get<bool>() ? "" : "  VIOLATION") << "\n";
    if (done > 0)
      std::cout << "  monte carlo mean " << report["mc_mean"]
                << " (margin " << report["mc_margin"] << ")\n";
    std::cout << (violated ? "FAIL" : "PASS") << "\n";
  }
  if (violated) {
    spit("praml-counterexample.json", report.dump(2));
    std::cerr << "counterexample written to praml-counterexample.json\n";
    return kExitSoundness;
  }
  return kExitOk;
}

// ---- profile / transform ------------------------------------------------

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Constant:
      return "constant";
    case Verdict::SizeDependent:
      return "size-dependent";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

json report_json(const std::map<int, SiteReport>& reports) {
  json arr = json::array();
  for (const auto& [site, rep] : reports) {
    json buckets = json::array();
    for (const Bucket& b : rep.buckets)
      buckets.push_back({{"size_lo", b.size_lo},
                         {"size_hi", b.size_hi},
                         {"taken", b.taken},
                         {"total", b.total}});
    arr.push_back({{"site", site},
                   {"taken", rep.taken},
                   {"total", rep.total},
                   {"p_hat", to_string(rep.p_hat)},
                   {"p_value", rep.p_value},
                   {"verdict", verdict_name(rep.verdict)},
                   {"buckets", buckets}});
  }
  return arr;
}

std::map<int, SiteReport> reports_from_json(const json& arr) {
  std::map<int, SiteReport> out;
  for (const auto& e : arr) {
    SiteReport rep;
    rep.site = e.at("site").get<int>();
    rep.taken = e.at("taken").get<long>();
    rep.total = e.at("total").get<long>();
    auto p = parse_rational(e.at("p_hat").get<std::string>());
    if (!p) throw Error("stats error", Span{}, "malformed p_hat");
    rep.p_hat = *p;
    if (e.contains("p_value")) rep.p_value = e["p_value"].get<double>();
    std::string v = e.at("verdict").get<std::string>();
    rep.verdict = v == "constant"         ? Verdict::Constant
                  : v == "size-dependent" ? Verdict::SizeDependent
                                          : Verdict::Inconclusive;
    out.emplace(rep.site, std::move(rep));
  }
  return out;
}

std::vector<std::vector<ValuePtr>> load_data_dir(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<std::vector<ValuePtr>> corpus;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      // Arguments on one line are separated by '|'.
      std::vector<ValuePtr> args;
      std::size_t start = 0;
      while (start <= line.size()) {
        auto bar = line.find('|', start);
        std::string piece = bar == std::string::npos
                                ? line.substr(start)
                                : line.substr(start, bar - start);
        args.push_back(value_from_literal(piece));
        if (bar == std::string::npos) break;
        start = bar + 1;
      }
      corpus.push_back(std::move(args));
    }
  }
  return corpus;
}

int cmd_profile(const std::string& file, const std::string& data_dir,
                const std::string& alpha_text, const std::string& out_path) {
  LoadedProgram prog = load_program(file);
  auto corpus = load_data_dir(data_dir);
  BranchStats stats = profile(*prog.core, corpus);
  auto alpha = parse_rational(alpha_text);
  if (!alpha) {
    std::cerr << "profile: malformed --alpha\n";
    return kExitInput;
  }
  auto reports = independence_test(stats, *alpha);
  std::string text = report_json(reports).dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    spit(out_path, text);
  return kExitOk;
}

int cmd_transform(const std::string& file, const std::string& stats_path,
                  int round_prob, bool drop_scrutinee,
                  const std::string& out_path) {
  LoadedProgram prog = load_program(file);
  json stats = json::parse(slurp(stats_path));
  auto reports = reports_from_json(stats);
  std::optional<int> digits;
  if (round_prob >= 0) digits = round_prob;
  CorePtr out = transform(*prog.core, reports, drop_scrutinee, digits);
  std::string text = pretty(*out) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    spit(out_path, text);
  return kExitOk;
}

// ---- corpus -------------------------------------------------------------

int cmd_corpus(const std::string& dir, bool as_json) {
  json rows = json::array();
  bool all_ok = true;
  for (const auto& entry : golden::registry()) {
    std::string path = dir + "/" + entry.name + ".praml";
    json row;
    row["program"] = entry.name;
    try {
      Analysis a = analyze_source(slurp(path), false);
      row["constraints"] = a.num_constraints;
      row["solve_seconds"] = a.solve_seconds;
      bool ok;
      if (!entry.feasible) {
        row["bound"] = "no linear bound";
        ok = !a.feasible;
      } else if (!a.feasible) {
        row["bound"] = "no linear bound";
        ok = false;
      } else {
        row["bound"] = show(a.bound, a.solved_args.size());
        BoundExpr expect{entry.constant, entry.terms};
        ok = equal(a.bound, expect);
      }
      row["ok"] = ok;
      all_ok = all_ok && ok;
    } catch (const Error& err) {
      row["error"] = err.what();
      row["ok"] = false;
      all_ok = false;
    }
    rows.push_back(std::move(row));
  }
  if (as_json) {
    std::cout << json{{"rows", rows}, {"pass", all_ok}}.dump(2) << "\n";
  } else {
    for (const auto& row : rows) {
      std::string bound = row.contains("bound")
                              ? row["bound"].get<std::string>()
                              : row["error"].get<std::string>();
      std::printf("%-22s %-28s %6s rows  %8.3fs  %s\n",
                  row["program"].get<std::string>().c_str(), bound.c_str(),
                  row.contains("constraints")
                      ? std::to_string(row["constraints"].get<int>()).c_str()
                      : "-",
                  row.contains("solve_seconds")
                      ? row["solve_seconds"].get<double>()
                      : 0.0,
                  row["ok"].get<bool>() ? "ok" : "MISMATCH");
    }
    std::cout << (all_ok ? "corpus: all bounds match" : "corpus: MISMATCH")
              << "\n";
  }
  return all_ok ? kExitOk : kExitBoundMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"expected-cost analysis for a probabilistic functional language"};
  app.require_subcommand(1);

  std::string file, emit_lp, data_dir, stats_path, out_path;
  std::string corpus_dir = PRAML_DEFAULT_CORPUS_DIR;
  std::string alpha = "1/20";
  std::vector<std::string> inputs;
  bool as_json = false, drop_scrutinee = false;
  int depth = 12;
  long trials = 1000;
  unsigned long long seed = 1, budget = 1'000'000;
  int round_prob = -1;

  auto* analyze = app.add_subcommand("analyze", "infer an expected-cost bound");
  analyze->add_option("file", file)->required();
  analyze->add_option("--emit-lp", emit_lp, "dump the LP system to a file");
  analyze->add_flag("--json", as_json);

  auto* eval = app.add_subcommand("eval", "depth-indexed distribution");
  eval->add_option("file", file)->required();
  eval->add_option("--input", inputs, "argument value literal (repeatable)");
  eval->add_option("--depth", depth);
  eval->add_flag("--json", as_json);

  auto* sample = app.add_subcommand("sample", "seeded Monte Carlo runs");
  sample->add_option("file", file)->required();
  sample->add_option("--input", inputs);
  sample->add_option("--trials", trials);
  sample->add_option("--seed", seed);
  sample->add_option("--budget", budget);

  auto* check = app.add_subcommand("check", "verify the bound empirically");
  check->add_option("file", file)->required();
  check->add_option("--input", inputs);
  check->add_option("--depth", depth);
  check->add_option("--trials", trials);
  check->add_option("--seed", seed);
  check->add_option("--budget", budget);
  check->add_flag("--json", as_json);

  auto* profile = app.add_subcommand("profile", "branch-frequency profiling");
  profile->add_option("file", file)->required();
  profile->add_option("--data", data_dir, "directory of value literals")
      ->required();
  profile->add_option("--alpha", alpha, "independence-test significance");
  profile->add_option("-o,--output", out_path);

  auto* transform =
      app.add_subcommand("transform", "rewrite conditionals into flips");
  transform->add_option("file", file)->required();
  transform->add_option("--stats", stats_path)->required();
  transform->add_option("--round-prob", round_prob, "round p to d decimals");
  transform->add_flag("--drop-scrutinee", drop_scrutinee);
  transform->add_option("-o,--output", out_path);

  auto* corpus = app.add_subcommand("corpus", "run the bundled golden corpus");
  corpus->add_option("--dir", corpus_dir);
  corpus->add_flag("--json", as_json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(file, emit_lp, as_json);
    if (eval->parsed()) return cmd_eval(file, inputs, depth, as_json);
    if (sample->parsed()) return cmd_sample(file, inputs, trials, seed, budget);
    if (check->parsed())
      return cmd_check(file, inputs, depth, trials, seed, budget, as_json);
    if (profile->parsed()) return cmd_profile(file, data_dir, alpha, out_path);
    if (transform->parsed())
      return cmd_transform(file, stats_path, round_prob, drop_scrutinee,
                           out_path);
    if (corpus->parsed()) return cmd_corpus(corpus_dir, as_json);
  } catch (const Error& e) {
    std::cerr << "praml: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "praml: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
