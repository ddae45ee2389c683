#include "lrmp/had.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "lrmp/errors.hpp"

namespace lrmp {

namespace {

double log_sum(const std::vector<double>& x) {
  return std::log(std::accumulate(x.begin(), x.end(), 0.0));
}

}  // namespace

HadSystem::HadSystem(std::size_t L, int N, std::vector<double> params)
    : sites(L), particles(N), x(std::move(params)) {
  if (L == 0) throw InvalidLatticeError("lattice needs at least one site");
  if (N < 0) throw InvalidInput("particle count must be non-negative");
  if (x.empty()) x = unit_params(L);
  if (x.size() != L) throw DimensionMismatchError("site parameters do not match lattice size");
  for (double v : x) {
    if (!std::isfinite(v) || v <= 0.0) throw InvalidInput("site parameters must be positive");
  }
}

RateTable had_rates(int order) {
  return RateTable::from_function(order, [](int, int n) { return 1.0 / (n + 1); });
}

RateSpec had_spec(const HadSystem& sys) {
  return RateSpec(had_rates(sys.particles), 0.0, sys.x);
}

double had_log_weight(const Configuration& eta, const std::vector<double>& x) {
  if (eta.sites() != x.size()) throw DimensionMismatchError("site parameters mismatch");
  double s = std::lgamma(eta.total() + 1.0);
  for (std::size_t l = 0; l < x.size(); ++l) {
    s += eta[l] * std::log(x[l]) - std::lgamma(eta[l] + 1.0);
  }
  return s;
}

double had_weight(const Configuration& eta, const std::vector<double>& x) {
  return std::exp(had_log_weight(eta, x));
}

double had_probability(const Configuration& eta, const std::vector<double>& x) {
  return std::exp(had_log_weight(eta, x) - eta.total() * log_sum(x));
}

Distribution had_distribution(const HadSystem& sys) {
  const StateSpace space(sys.sites, sys.particles);
  Distribution out{sys.sites, sys.particles, {}};
  out.probs.reserve(space.size());
  for (const Configuration& eta : space.configurations()) {
    out.probs.push_back(had_probability(eta, sys.x));
  }
  return out;
}

std::vector<double> site_marginal(const HadSystem& sys, std::size_t site) {
  if (site >= sys.sites) throw InvalidInput("site outside lattice");
  const int N = sys.particles;
  const double total = std::accumulate(sys.x.begin(), sys.x.end(), 0.0);
  const double p = sys.x[site] / total;
  std::vector<double> pmf(static_cast<std::size_t>(N) + 1, 0.0);
  if (p >= 1.0) {
    pmf.back() = 1.0;
    return pmf;
  }
  for (int m = 0; m <= N; ++m) {
    const double log_c = std::lgamma(N + 1.0) - std::lgamma(m + 1.0) - std::lgamma(N - m + 1.0);
    pmf[static_cast<std::size_t>(m)] = std::exp(log_c + m * std::log(p) + (N - m) * std::log1p(-p));
  }
  return pmf;
}

std::vector<double> brute_marginal(const Distribution& pi, std::size_t site) {
  const StateSpace space(pi.sites, pi.particles);
  if (!pi.matches(space)) throw DimensionMismatchError("distribution does not match space");
  std::vector<double> pmf(static_cast<std::size_t>(pi.particles) + 1, 0.0);
  std::size_t r = 0;
  for (const Configuration& eta : space.configurations()) {
    pmf[static_cast<std::size_t>(eta[site])] += pi[r++];
  }
  return pmf;
}

double edge_current_formula(const HadSystem& sys) {
  if (sys.sites < 2) throw InvalidLatticeError("a single site has no edge");
  const int N = sys.particles;
  if (N == 0) return 0.0;
  const double total = std::accumulate(sys.x.begin(), sys.x.end(), 0.0);
  // sum (x_l / S)^{N+1} in log space to avoid overflow.
  double piled = 0.0;
  for (double v : sys.x) piled += std::exp((N + 1) * std::log(v / total));
  return total / (N + 1) * (1.0 - piled);
}

BijectionReport edge_transition_bijection(const HadSystem& sys, double tol) {
  if (sys.sites < 2) throw InvalidLatticeError("a single site has no edge");
  const std::size_t L = sys.sites;
  const RateSpec spec = had_spec(sys);
  const StateSpace space(L, sys.particles);
  const StateSpace bigger(L, sys.particles + 1);
  const double total = std::accumulate(sys.x.begin(), sys.x.end(), 0.0);
  const double scale = total / (sys.particles + 1);

  BijectionReport report;
  std::set<std::uint64_t> images;
  for (const Configuration& eta : space.configurations()) {
    const double p = had_probability(eta, sys.x);
    for (const Transition& t : enumerate_transitions(eta, spec)) {
      if (!crosses_edge(t.from, t.to, t.direction, L - 1, L)) continue;
      ++report.transitions;
      const Configuration image = add_particle(eta, t.to);
      images.insert(bigger.rank(image));
      const double lhs = p * t.rate;
      const double rhs = scale * had_probability(image, sys.x);
      report.worst_current_gap = std::max(report.worst_current_gap, std::abs(lhs - rhs));
    }
  }
  std::set<std::uint64_t> eligible;
  for (const Configuration& xi : bigger.configurations()) {
    if (occupied_sites(xi).size() >= 2) eligible.insert(bigger.rank(xi));
  }
  report.images = images.size();
  report.eligible = eligible.size();
  report.injective = report.images == report.transitions;
  report.surjective = images == eligible;
  report.ok = report.injective && report.surjective && report.worst_current_gap <= tol;
  return report;
}

MonotonicityTable current_monotonicity(const std::vector<double>& x, int n_lo, int n_hi) {
  if (x.size() < 2) throw InvalidLatticeError("a single site has no edge");
  if (n_hi < n_lo) throw InvalidInput("empty particle range");
  MonotonicityTable table;
  for (int n = n_lo; n <= n_hi; ++n) {
    table.n.push_back(n);
    table.current.push_back(edge_current_formula(HadSystem(x.size(), n, x)));
    if (table.current.size() > 1 && !(table.current.back() < table.current[table.current.size() - 2])) {
      table.strictly_decreasing = false;
    }
  }
  return table;
}

}  // namespace lrmp
