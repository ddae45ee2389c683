// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lrmp/errors.hpp"
#include "lrmp/exact.hpp"
#include "lrmp/factorise.hpp"
#include "lrmp/had.hpp"
#include "lrmp/montecarlo.hpp"

using namespace lrmp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<double> draw(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& e : v) e = d(rng);
  return v;
}

Distribution solve(std::size_t L, int N, const RateSpec& spec) {
  return stationary(build_generator(StateSpace(L, N), spec));
}

// Shared HAD sweep for criteria 1-3.
struct HadSweep {
  double stat_err = 0.0;
  double marg_err = 0.0;
  double current_rel = 0.0;
  double edge_spread = 0.0;
  double seconds = 0.0;
};

HadSweep run_had_sweep() {
  HadSweep s;
  std::mt19937_64 rng(1001);
  const auto t0 = Clock::now();
  for (std::size_t L = 2; L <= 5; ++L) {
    for (int N = 1; N <= 6; ++N) {
      for (int k = 0; k < 20; ++k) {
        const HadSystem sys(L, N, draw(rng, L, 0.2, 3.0));
        const RateSpec spec = had_spec(sys);
        const StateSpace space(L, N);
        const Distribution pi = solve(L, N, spec);
        s.stat_err = std::max(s.stat_err, max_abs_diff(pi.probs, had_distribution(sys).probs));
        for (std::size_t l = 0; l < L; ++l) {
          s.marg_err =
              std::max(s.marg_err, max_abs_diff(site_marginal(sys, l), brute_marginal(pi, l)));
        }
        const double j = edge_current_formula(sys);
        double lo = INFINITY;
        double hi = -INFINITY;
        for (std::size_t e = 0; e < L; ++e) {
          const double je = edge_current(pi, space, spec, e);
          s.current_rel = std::max(s.current_rel, std::fabs(je - j) / j);
          lo = std::min(lo, je);
          hi = std::max(hi, je);
        }
        s.edge_spread = std::max(s.edge_spread, hi - lo);
      }
    }
  }
  s.seconds = seconds_since(t0);
  return s;
}

// Criteria 4 and 5 share the table set.
enum class Kind { Palrmp, Hpalrmp, Slrmp };

constexpr int kOrder = 5;
constexpr int kCheckerLoad = 4;
const std::vector<double> kPool{1.0, 2.0, 0.5, 3.0};

struct Labelled {
  std::string label;
  RateTable u;
};

std::vector<Labelled> build_tables() {
  std::mt19937_64 rng(2002);
  std::vector<Labelled> tables;
  auto g = [&] { return draw(rng, kOrder + 1, 0.3, 2.0); };
  for (int i = 0; i < 20; ++i) {
    const int which = i % 3;
    if (which == 0) tables.push_back({"palrmp-built", construct_rate_palrmp(g(), kOrder)});
    if (which == 1) tables.push_back({"hpalrmp-built", construct_rate_hpalrmp(g(), kOrder)});
    if (which == 2) tables.push_back({"slrmp-built", construct_rate_slrmp(g(), kOrder)});
  }
  std::uniform_real_distribution<double> d(0.2, 2.0);
  for (int i = 0; i < 20; ++i) {
    tables.push_back(
        {"random", RateTable::from_function(kOrder, [&](int, int) { return d(rng); })});
  }
  // Passing tables with one entry of load <= 3 moved by 10%.
  for (int i = 0; i < 20; ++i) {
    RateTable u = tables[static_cast<std::size_t>(i)].u;
    std::vector<std::pair<int, int>> cells;
    for (int m = 1; m <= 3; ++m) {
      for (int n = 0; m + n <= 3; ++n) cells.emplace_back(m, n);
    }
    const auto [m, n] = cells[rng() % cells.size()];
    u.set(m, n, u(m, n) * 1.1);
    tables.push_back({"perturbed", u});
  }
  return tables;
}

struct SystemFamily {
  double q;
  bool homogeneous;
  Variant variant;
};

SystemFamily family_of(Kind k) {
  switch (k) {
    case Kind::Palrmp: return {0.0, false, Variant::Palrmp};
    case Kind::Hpalrmp: return {0.0, true, Variant::Hpalrmp};
    case Kind::Slrmp: return {1.0, false, Variant::Slrmp};
  }
  return {};
}

std::vector<double> params_for(std::size_t L, bool homogeneous) {
  if (homogeneous) return unit_params(L);
  return {kPool.begin(), kPool.begin() + static_cast<long>(L)};
}

bool checker(Kind k, const RateTable& u, int load) {
  CheckOptions opts;
  opts.max_load = load;
  switch (k) {
    case Kind::Palrmp: return check_palrmp(u, opts).pass;
    case Kind::Hpalrmp: return check_hpalrmp(u, opts).pass;
    case Kind::Slrmp: return check_slrmp(u, opts).pass;
  }
  return false;
}

const char* name(Kind k) {
  return k == Kind::Palrmp ? "palrmp" : k == Kind::Hpalrmp ? "hpalrmp" : "slrmp";
}

Outcome criterion_oracle(const std::vector<Labelled>& tables) {
  const auto t0 = Clock::now();
  Outcome out;
  int compared = 0;
  int passes = 0;
  int mismatches = 0;
  double worst_rel = 0.0;
  std::string first_bad;
  for (std::size_t t = 0; t < tables.size(); ++t) {
    const RateTable& u = tables[t].u;
    for (Kind k : {Kind::Palrmp, Kind::Hpalrmp, Kind::Slrmp}) {
      const SystemFamily fam = family_of(k);
      std::vector<FamilyMember> members;
      for (std::size_t L = 2; L <= 4; ++L) {
        for (int N = 1; N <= kOrder; ++N) {
          const std::vector<double> x = params_for(L, fam.homogeneous);
          members.push_back({solve(L, N, RateSpec(u, fam.q, x)), x});
        }
      }
      const bool oracle = product_form_oracle_family(members).product;
      const bool verdict = checker(k, u, kCheckerLoad);
      ++compared;
      if (oracle != verdict) {
        ++mismatches;
        if (first_bad.empty()) {
          first_bad = "table " + std::to_string(t) + " (" + tables[t].label + ") " + name(k);
        }
        continue;
      }
      if (!verdict) continue;
      ++passes;
      const std::vector<double> x4 = params_for(4, fam.homogeneous);
      const OnePointTable f = one_point_from_rates(fam.variant, u, x4, kOrder);
      for (const FamilyMember& mbr : members) {
        const StateSpace space(mbr.pi.sites, mbr.pi.particles);
        const Distribution target = factorised_distribution(f, space, mbr.x);
        for (std::size_t i = 0; i < target.size(); ++i) {
          worst_rel = std::max(worst_rel, std::fabs(mbr.pi[i] - target[i]) / target[i]);
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  out.pass = mismatches == 0 && worst_rel < 1e-8 && secs < 300.0;
  std::ostringstream os;
  os << compared << " verdicts, " << mismatches << " mismatches, " << passes
     << " product cases, worst one-point rel err " << fmt("%.2e", worst_rel) << ", "
     << fmt("%.1f s", secs);
  if (!first_bad.empty()) os << ", first mismatch " << first_bad;
  out.detail = os.str();
  return out;
}

Outcome criterion_hierarchy(const std::vector<Labelled>& tables) {
  int broken = 0;
  int alt_differs = 0;
  for (const Labelled& t : tables) {
    const bool pal = check_palrmp(t.u).pass;
    const bool hpal = check_hpalrmp(t.u).pass;
    const bool sl = check_slrmp(t.u).pass;
    if ((pal && !hpal) || (hpal && !sl)) ++broken;
    if (hpal != check_hpalrmp_alt(t.u).pass) ++alt_differs;
  }
  return {broken == 0 && alt_differs == 0,
          std::to_string(tables.size()) + " tables, " + std::to_string(broken) +
              " implication failures, " + std::to_string(alt_differs) + " alt disagreements"};
}

Outcome criterion_q_independence() {
  std::mt19937_64 rng(3003);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const RateTable u = construct_rate_palrmp(draw(rng, kOrder + 1, 0.3, 2.0), kOrder);
    for (std::size_t L = 2; L <= 4; ++L) {
      const std::vector<double> x = draw(rng, L, 0.2, 3.0);
      for (int N = 1; N <= kOrder; ++N) {
        const Distribution base = solve(L, N, RateSpec(u, 0.0, x));
        for (double q : {0.5, 1.0, 2.0}) {
          worst = std::max(worst, max_abs_diff(base.probs, solve(L, N, RateSpec(u, q, x)).probs));
        }
      }
    }
  }
  return {worst < 1e-10, "10 tables, q in {0, 0.5, 1, 2}, max abs diff " + fmt("%.2e", worst)};
}

Outcome criterion_translation() {
  std::mt19937_64 rng(4004);
  std::uniform_real_distribution<double> dq(0.0, 2.0);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const std::size_t L = 2 + rng() % 4;
    const int N = 1 + static_cast<int>(rng() % 4);
    std::uniform_real_distribution<double> d(0.2, 2.0);
    const RateSpec spec(RateTable::from_function(N, [&](int, int) { return d(rng); }), dq(rng),
                        draw(rng, L, 0.2, 3.0));
    const StateSpace space(L, N);
    const Distribution pi = solve(L, N, spec);
    const Distribution rotated = solve(L, N, rotate_spec(spec, 1));
    for (const Configuration& eta : space.configurations()) {
      worst = std::max(worst, std::fabs(rotated[space.rank(shift(eta))] - pi[space.rank(eta)]));
    }
  }
  return {worst < 1e-10, "10 random systems, max abs diff " + fmt("%.2e", worst)};
}

Outcome criterion_consistency() {
  std::mt19937_64 rng(5005);
  std::uniform_real_distribution<double> db(0.5, 2.0);
  std::uniform_real_distribution<double> dc(-0.05, 0.05);
  double worst_sum = 0.0;
  double worst_rel = 0.0;
  int rebuilt = 0;
  for (int t = 0; t < 100; ++t) {
    BCPair pair;
    for (int i = 0; i <= 12; ++i) {
      pair.b.push_back(db(rng));
      pair.c.push_back(i == 1 ? 0.0 : dc(rng));
    }
    for (int n = 1; n <= 12; ++n) {
      worst_sum = std::max(worst_sum, std::fabs(static_cast<double>(consistency_sum(pair, n))));
    }
    try {
      const RateTable u = u_from_bc(pair);
      ++rebuilt;
      for (int n = 0; n < u.order(); ++n) {
        const double b = pair.b[static_cast<std::size_t>(n)];
        worst_rel = std::max(worst_rel, std::fabs(u(1, n) - b) / b);
      }
    } catch (const DomainError&) {
      // Some (b, c) give a negative rate somewhere; only the sum is checked then.
    }
  }
  const bool ok = worst_sum < 1e-12 && worst_rel < 1e-9 && rebuilt > 0;
  return {ok, "100 pairs, max |sum| " + fmt("%.2e", worst_sum) + ", u(1,n)=b(n) rel err " +
                  fmt("%.2e", worst_rel) + " over " + std::to_string(rebuilt) + " tables"};
}

Outcome criterion_constructors() {
  std::mt19937_64 rng(6006);
  const int n_max = 8;
  int failures = 0;
  for (int t = 0; t < 10; ++t) {
    const std::vector<double> g = draw(rng, n_max + 1, 0.3, 2.0);
    const RateTable p = construct_rate_palrmp(g, n_max);
    const RateTable h = construct_rate_hpalrmp(g, n_max);
    const RateTable s = construct_rate_slrmp(g, n_max);
    if (!check_palrmp(p).pass) ++failures;
    if (!check_hpalrmp(h).pass || check_palrmp(h).pass) ++failures;
    if (!check_slrmp(s).pass || check_hpalrmp(s).pass) ++failures;
  }
  return {failures == 0, "10 random g, N_max 8, " + std::to_string(failures) + " contract failures"};
}

Outcome criterion_balance() {
  std::mt19937_64 rng(7007);
  double worst_detailed = 0.0;
  double worst_pairwise = 0.0;
  bool holds = true;
  for (int t = 0; t < 10; ++t) {
    const std::vector<double> g = draw(rng, kOrder + 1, 0.3, 2.0);
    const RateTable sym = construct_rate_slrmp(g, kOrder);
    const RateTable pal = construct_rate_palrmp(g, kOrder);
    for (std::size_t L = 2; L <= 4; ++L) {
      const std::vector<double> x = draw(rng, L, 0.2, 3.0);
      for (int N = 1; N <= kOrder; ++N) {
        const StateSpace space(L, N);
        const RateSpec s1(sym, 1.0, x);
        const BalanceReport d = check_detailed_balance(solve(L, N, s1), s1, space);
        const RateSpec s0(pal, 0.0, x);
        const BalanceReport p = check_pairwise_balance_talrmp(solve(L, N, s0), s0, space);
        holds = holds && d.holds && p.holds;
        worst_detailed = std::max(worst_detailed, d.worst);
        worst_pairwise = std::max(worst_pairwise, p.worst);
      }
    }
  }
  const bool ok = holds && worst_detailed < 1e-10 && worst_pairwise < 1e-10;
  return {ok, "detailed (q=1) worst " + fmt("%.2e", worst_detailed) + ", pairwise (q=0) worst " +
                  fmt("%.2e", worst_pairwise)};
}

Outcome criterion_monte_carlo() {
  SimConfig cfg;
  const HadSystem sys(3, 3, {1.0, 2.0, 3.0});
  cfg.spec = had_spec(sys);
  cfg.initial = Configuration{3, 0, 0};
  cfg.max_events = 1000000;
  cfg.seed = 42;
  const auto t0 = Clock::now();
  const EmpiricalMeasure a = simulate(cfg);
  const double secs = seconds_since(t0);
  const EmpiricalMeasure b = simulate(cfg);
  const double tv = tv_distance(a, had_distribution(sys));
  const bool identical = a.freq == b.freq && a.total_time == b.total_time && a.events == b.events;
  return {tv < 0.01 && secs < 30.0 && identical,
          "TV " + fmt("%.5f", tv) + ", " + fmt("%.2f s", secs) +
              (identical ? ", rerun bit-identical" : ", rerun differs")};
}

Outcome criterion_monotonicity() {
  std::mt19937_64 rng(8008);
  int decreasing = 0;
  for (int t = 0; t < 5; ++t) {
    const std::size_t L = 3 + rng() % 3;
    if (current_monotonicity(draw(rng, L, 0.2, 3.0), 1, 10).strictly_decreasing) ++decreasing;
  }
  return {decreasing == 5, std::to_string(decreasing) + "/5 x-vectors strictly decreasing, N = 1..10"};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const std::string& title, const std::function<Outcome()>& body) {
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
    std::fflush(stdout);
  };

  const HadSweep had = run_had_sweep();
  report(1, "HAD stationary law", [&] {
    return Outcome{had.stat_err < 1e-10 && had.seconds < 60.0,
                   "max abs err " + fmt("%.2e", had.stat_err) + ", sweep " +
                       fmt("%.1f s", had.seconds)};
  });
  report(2, "HAD binomial marginals", [&] {
    return Outcome{had.marg_err < 1e-12, "max abs err " + fmt("%.2e", had.marg_err)};
  });
  report(3, "HAD edge current", [&] {
    return Outcome{had.current_rel < 1e-9 && had.edge_spread < 1e-12,
                   "max rel err " + fmt("%.2e", had.current_rel) + ", edge spread " +
                       fmt("%.2e", had.edge_spread)};
  });

  const std::vector<Labelled> tables = build_tables();
  report(4, "checker and oracle agree", [&] { return criterion_oracle(tables); });
  report(5, "checker hierarchy", [&] { return criterion_hierarchy(tables); });
  report(6, "asymmetry independence", criterion_q_independence);
  report(7, "translation covariance", criterion_translation);
  report(8, "consistency identity", criterion_consistency);
  report(9, "constructor contracts", criterion_constructors);
  report(10, "balance structure", criterion_balance);
  report(11, "Monte Carlo convergence", criterion_monte_carlo);
  report(12, "HAD current monotonicity", criterion_monotonicity);

  std::printf("%d/12 criteria passed\n", 12 - failed);
  return failed == 0 ? 0 : 1;
}
