#include "praml/analysis.hpp"

#include <chrono>

#include "praml/normalize.hpp"
#include "praml/parser.hpp"

namespace praml {

namespace {

// Phase objectives over the reported template: minimize tails slots, then
// per-element slots, then heads slots, then every constant slot including
// the top-level budget. Afterwards each reported slot is pinned
// individually for a canonical assignment.
std::vector<std::vector<std::pair<int, Rat>>> build_phases(const GenResult& g) {
  std::vector<Slot> slots;
  collect_slots(g.root, slots);
  slots.push_back({SlotKind::Const, g.q0});

  auto slot_vars = [&](SlotKind k) {
    std::vector<std::pair<int, Rat>> terms;
    for (const Slot& s : slots)
      if (s.kind == k && s.anno.is_var()) terms.emplace_back(s.anno.var, Rat(1));
    return terms;
  };

  std::vector<std::vector<std::pair<int, Rat>>> phases;
  for (SlotKind k : {SlotKind::ProbT, SlotKind::PerElem, SlotKind::ProbH,
                     SlotKind::Const}) {
    auto terms = slot_vars(k);
    if (!terms.empty()) phases.push_back(std::move(terms));
  }
  for (const Slot& s : slots)
    if (s.anno.is_var()) phases.push_back({{s.anno.var, Rat(1)}});
  if (phases.empty()) phases.push_back({});  // pure feasibility
  return phases;
}

}  // namespace

Analysis analyze_core(CorePtr core, bool want_core_on_infeasible) {
  Analysis a;
  a.core = std::move(core);
  a.base = infer_base_types(*a.core);
  a.gen = gen_constraints(*a.core);
  a.num_constraints = a.gen.constraints.size();
  a.num_vars = static_cast<std::size_t>(a.gen.vars.size());

  LinearProgram lp = LinearProgram::from(a.gen.constraints, a.gen.vars);
  auto phases = build_phases(a.gen);

  auto t0 = std::chrono::steady_clock::now();
  LpResult res = solve_lexicographic(std::move(lp), phases,
                                     want_core_on_infeasible);
  auto t1 = std::chrono::steady_clock::now();
  a.solve_seconds = std::chrono::duration<double>(t1 - t0).count();

  if (res.status != LpStatus::Optimal) {
    a.feasible = false;
    for (std::size_t i : res.infeasible_core) {
      const Constraint& row = a.gen.constraints.rows[i];
      a.infeasible_core.push_back(row.tag + "@" + row.span.str());
    }
    return a;
  }

  a.feasible = true;
  a.solution = std::move(res.assignment);
  a.solved_root = substitute(a.gen.root, a.solution);
  a.q0 = a.gen.q0.is_var() ? a.solution[a.gen.q0.var] : a.gen.q0.c;

  Rat extra = a.q0 + a.solved_root.q.value();
  AnnTypePtr cur = a.solved_root.ty;
  PotAnn res_pa{cur, Anno(Rat(0))};
  while (cur->kind == TyKind::Arrow) {
    a.solved_args.push_back(cur->arg);
    res_pa = cur->res;
    cur = cur->res.ty;
  }
  a.solved_result = a.solved_args.empty() ? a.solved_root : res_pa;
  a.bound = extract_bound(a.solved_args, extra);
  return a;
}

Analysis analyze_source(const std::string& source,
                        bool want_core_on_infeasible) {
  auto surf = parse_program(source);
  return analyze_core(normalize(*surf), want_core_on_infeasible);
}

LinearProgram analysis_lp(const Analysis& a) {
  LinearProgram lp = LinearProgram::from(a.gen.constraints, a.gen.vars);
  // Weighted stand-in for the lexicographic phases.
  const Rat w(1 << 20);
  std::vector<Slot> slots;
  collect_slots(a.gen.root, slots);
  slots.push_back({SlotKind::Const, a.gen.q0});
  std::vector<std::pair<int, Rat>> objective;
  for (const Slot& s : slots) {
    if (!s.anno.is_var()) continue;
    Rat weight = s.kind == SlotKind::ProbT     ? Rat(w * w * w)
                 : s.kind == SlotKind::PerElem ? Rat(w * w)
                 : s.kind == SlotKind::ProbH   ? w
                                               : Rat(1);
    objective.emplace_back(s.anno.var, weight);
  }
  lp.set_objective(std::move(objective));
  return lp;
}

bool verify_assignment(const Analysis& a, std::string* first_violation) {
  if (!a.feasible) return false;
  return all_satisfied(a.gen.constraints, a.solution, first_violation);
}

}  // namespace praml
