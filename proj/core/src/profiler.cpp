#include "praml/profiler.hpp"

#include <cmath>

#include "praml/diag.hpp"
#include "praml/normalize.hpp"

namespace praml {

namespace {

struct Collector : CondObserver {
  BranchStats stats;
  void observe(int site, bool taken, long enclosing_list_len) override {
    SiteStats& s = stats.sites[site];
    s.total++;
    if (taken) s.taken++;
    auto& bucket = s.by_size[enclosing_list_len];
    bucket.second++;
    if (taken) bucket.first++;
  }
};


// Lower regularized incomplete gamma P(a, x), double precision.
double gammp(double a, double x) {
  if (x <= 0) return 0.0;
  auto gln = std::lgamma(a);
  if (x < a + 1.0) {
    // series
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - gln);
  }
  // continued fraction
  double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  double q = std::exp(-x + a * std::log(x) - gln) * h;
  return 1.0 - q;
}

double chi2_sf(double stat, int df) {
  return 1.0 - gammp(df / 2.0, stat / 2.0);
}

Rat round_prob(const Rat& p, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  // round-half-up of p * scale
  mpz_class num = p.get_num() * scale * 2 + p.get_den();
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), mpz_class(p.get_den() * 2).get_mpz_t());
  Rat r(q, scale);
  r.canonicalize();
  if (sgn(r) < 0) r = 0;
  if (r > 1) r = 1;
  return r;
}

}  // namespace

BranchStats profile(const CoreExpr& program,
                    const std::vector<std::vector<ValuePtr>>& corpus) {
  Collector collector;
  DetRun prog = run_deterministic({}, program, &collector);
  for (const auto& args : corpus) {
    if (prog.value->kind != ValKind::Closure && !args.empty())
      throw EvalError(program.span, "program is not a function");
    Env env = env_bind({}, "%f", prog.value);
    for (std::size_t i = 0; i < args.size(); ++i)
      env = env_bind(env, "%x" + std::to_string(i), args[i]);
    CorePtr chain = application_chain(args.size());
    run_deterministic(env, *chain, &collector);
  }
  return collector.stats;
}

std::map<int, SiteReport> independence_test(const BranchStats& stats,
                                            const Rat& alpha) {
  std::map<int, SiteReport> out;
  double a = alpha.get_d();
  for (const auto& [site, s] : stats.sites) {
    SiteReport rep;
    rep.site = site;
    rep.taken = s.taken;
    rep.total = s.total;
    rep.p_hat = s.total > 0 ? Rat(s.taken, s.total) : Rat(0);
    if (s.total > 0) rep.p_hat.canonicalize();

    if (s.total == 0) {
      rep.verdict = Verdict::Inconclusive;
      out.emplace(site, std::move(rep));
      continue;
    }

    // 4 equal-population buckets over observed sizes.
    long per_bucket = (s.total + 3) / 4;
    Bucket cur;
    bool open = false;
    for (const auto& [size, counts] : s.by_size) {
      if (!open) {
        cur = Bucket{size, size, 0, 0};
        open = true;
      }
      cur.size_hi = size;
      cur.taken += counts.first;
      cur.total += counts.second;
      if (cur.total >= per_bucket) {
        rep.buckets.push_back(cur);
        open = false;
      }
    }
    if (open) rep.buckets.push_back(cur);

    if (s.taken == 0 || s.taken == s.total) {
      rep.verdict = Verdict::Constant;
      rep.p_value = 1.0;
      out.emplace(site, std::move(rep));
      continue;
    }
    if (rep.buckets.size() < 2) {
      rep.verdict = Verdict::Inconclusive;
      out.emplace(site, std::move(rep));
      continue;
    }

    double pooled = static_cast<double>(s.taken) / s.total;
    double stat = 0;
    for (const Bucket& b : rep.buckets) {
      double et = b.total * pooled;
      double ef = b.total * (1.0 - pooled);
      double dt = b.taken - et;
      stat += dt * dt / et + dt * dt / ef;
    }
    int df = static_cast<int>(rep.buckets.size()) - 1;
    rep.p_value = chi2_sf(stat, df);
    rep.verdict = rep.p_value >= a ? Verdict::Constant : Verdict::SizeDependent;
    out.emplace(site, std::move(rep));
  }
  return out;
}

namespace {

struct Transformer {
  const std::map<int, SiteReport>& reports;
  bool drop_scrutinee;
  std::optional<int> round_digits;

  bool rewritable(int site) const {
    auto it = reports.find(site);
    return it != reports.end() && it->second.verdict == Verdict::Constant;
  }

  Rat flip_prob(int site) const {
    Rat p = reports.at(site).p_hat;
    if (round_digits) p = round_prob(p, *round_digits);
    return p;
  }

  CorePtr run(const CoreExpr& e) {
    if (e.kind == CoreKind::Let && drop_scrutinee && e.e1 &&
        e.e1->kind == CoreKind::If && e.e1->var == e.bind1 &&
        e.bind1 != "_" && rewritable(e.e1->site) &&
        free_path_count(*e.e1->e0, e.bind1) == 0 &&
        free_path_count(*e.e1->e1, e.bind1) == 0) {
      // The binding exists only to feed the conditional; drop it.
      auto flip = make_core(CoreKind::Flip, e.e1->span);
      flip->lit = flip_prob(e.e1->site);
      flip->e0 = run(*e.e1->e0);
      flip->e1 = run(*e.e1->e1);
      return flip;
    }
    if (e.kind == CoreKind::If && rewritable(e.site)) {
      auto flip = make_core(CoreKind::Flip, e.span);
      flip->lit = flip_prob(e.site);
      flip->e0 = run(*e.e0);
      flip->e1 = run(*e.e1);
      return flip;
    }
    auto c = clone(e);
    if (e.e0) c->e0 = run(*e.e0);
    if (e.e1) c->e1 = run(*e.e1);
    return c;
  }
};

void relabel_sites(CoreExpr& e, int& next) {
  if (e.kind == CoreKind::If) e.site = next++;
  if (e.e0) relabel_sites(*e.e0, next);
  if (e.e1) relabel_sites(*e.e1, next);
}

}  // namespace

CorePtr transform(const CoreExpr& program,
                  const std::map<int, SiteReport>& reports,
                  bool drop_scrutinee, std::optional<int> round_digits) {
  std::string bad;
  for (const auto& [site, rep] : reports)
    if (rep.verdict == Verdict::SizeDependent)
      bad += (bad.empty() ? "" : ", ") + std::to_string(site);
  if (!bad.empty())
    throw EvalError(program.span,
                    "size-dependent conditional site(s): " + bad);
  Transformer tr{reports, drop_scrutinee, round_digits};
  CorePtr out = tr.run(program);
  int next = 0;
  relabel_sites(*out, next);
  return out;
}

}  // namespace praml
