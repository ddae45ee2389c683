#pragma once

#include <cstddef>
#include <vector>

#include "lrmp/distribution.hpp"
#include "lrmp/dynamics.hpp"

namespace lrmp {

// Discrete Hammersley-Aldous-Diaconis process: the totally asymmetric
// long-range process with u(m, n) = 1/(n+1).

struct HadSystem {
  std::size_t sites = 0;
  int particles = 0;
  std::vector<double> x;

  HadSystem(std::size_t L, int N, std::vector<double> params);
};

RateTable had_rates(int order);
RateSpec had_spec(const HadSystem& sys);

// log of N! prod x_l^{eta_l} / eta_l!
double had_log_weight(const Configuration& eta, const std::vector<double>& x);
double had_weight(const Configuration& eta, const std::vector<double>& x);
// Weight over (x_1 + ... + x_L)^N.
double had_probability(const Configuration& eta, const std::vector<double>& x);
Distribution had_distribution(const HadSystem& sys);

// Binomial(N, x_l / sum x) pmf over 0..N.
std::vector<double> site_marginal(const HadSystem& sys, std::size_t site);

// Marginal of `site` obtained by summing pi over the space.
std::vector<double> brute_marginal(const Distribution& pi, std::size_t site);

// Closed-form stationary current across any edge; 0 when N = 0.
// Throws InvalidLatticeError for a single site.
double edge_current_formula(const HadSystem& sys);

struct BijectionReport {
  std::size_t transitions = 0;   // hops across the edge (L, 1)
  std::size_t images = 0;        // distinct images in the N+1 space
  std::size_t eligible = 0;      // N+1 configurations with >= 2 occupied sites
  bool injective = false;
  bool surjective = false;
  double worst_current_gap = 0.0;
  bool ok = false;
};

// Maps each hop k -> l across the edge (L, 1) to eta + one particle at l and
// checks it is a bijection onto the configurations with at least two
// occupied sites, with matching probability currents.
BijectionReport edge_transition_bijection(const HadSystem& sys, double tol = 1e-12);

// Formula current for each N in [n_lo, n_hi], and whether it strictly decreases.
struct MonotonicityTable {
  std::vector<int> n;
  std::vector<double> current;
  bool strictly_decreasing = true;
};

MonotonicityTable current_monotonicity(const std::vector<double>& x, int n_lo, int n_hi);

}  // namespace lrmp
