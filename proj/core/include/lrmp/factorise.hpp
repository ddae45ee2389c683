#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lrmp/distribution.hpp"
#include "lrmp/dynamics.hpp"
#include "lrmp/tolerances.hpp"

namespace lrmp {

/// u(m, n) = phi(n) for m >= 1. Holds phi(0..M-1) for a table of order M.
struct Phi {
  std::vector<double> phi;
};

/// Parametrisation of homogeneous factorising rates: b(m) = u(1, m) and
/// c(m) = u(m, 1) - u(1, m), with c(0) = -b(0) and c(1) = 0.
struct BCPair {
  std::vector<double> b;
  std::vector<double> c;
};

/// w(n) = u(1, n) / u(n+1, 0) for n = 0..M-1; the symmetric one-point
/// function is the running product of these ratios.
struct SlrmpRatios {
  std::vector<double> w;
};

using Extracted = std::variant<std::monostate, Phi, BCPair, SlrmpRatios>;

struct Witness {
  std::string condition;
  std::vector<int> index;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

/// Outcome of one condition check. `max_load` is the largest m + n the
/// check could see: a pass certifies the condition only up to that load.
struct CheckerReport {
  std::string variant;
  bool pass = false;
  Extracted extracted;
  std::vector<Witness> witnesses;
  std::size_t violations = 0;
  int max_load = 0;
};

struct CheckOptions {
  Tolerances tol = kDefaultTolerances;
  /// Only equations whose entries all have m + n <= max_load are checked;
  /// negative means the order of the table.
  int max_load = -1;
  /// Witnesses kept in the report (scan order); the count is always exact.
  std::size_t max_witnesses = 32;
};

CheckerReport check_palrmp(const RateTable& u, const CheckOptions& opts = {});
CheckerReport check_hpalrmp(const RateTable& u, const CheckOptions& opts = {});
CheckerReport check_hpalrmp_alt(const RateTable& u, const CheckOptions& opts = {});
/// Throws DomainError when a ratio it needs has a zero denominator.
CheckerReport check_slrmp(const RateTable& u, const CheckOptions& opts = {});

enum class Variant { Talrmp, Palrmp, Hpalrmp, Slrmp, Hslrmp };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& name);

/// Per-site weights f(x, n), stored in log space. Homogeneous variants keep
/// a single row that applies to every site.
struct OnePointTable {
  bool site_dependent = false;
  std::vector<double> x_values;
  std::vector<std::vector<double>> log_f;

  int n_max() const;
  double log_value(double x, int n) const;
  double value(double x, int n) const;
};

/// One-point function for a checker that passed. `x` lists the site
/// parameters the table must cover (ignored by homogeneous variants).
/// Throws InvalidInput when the report failed or carries the wrong data.
OnePointTable one_point(Variant variant, const CheckerReport& report,
                        std::span<const double> x, int n_max);

/// Directly from a rate table and variant: phi for Talrmp/Palrmp,
/// u(1, .) products for Hpalrmp, ratios for Slrmp/Hslrmp. No check is run.
OnePointTable one_point_from_rates(Variant variant, const RateTable& u,
                                   std::span<const double> x, int n_max);

/// log Z_{L,N} by log-sum-exp over the space.
double log_partition(const OnePointTable& f, const StateSpace& space, std::span<const double> x);

Distribution factorised_distribution(const OnePointTable& f, const StateSpace& space,
                                     std::span<const double> x);

/// Rates from a (b, c) pair; the table has order b.size().
RateTable u_from_bc(const BCPair& pair);

/// One entry u(m, n) of the (b, c) formula, in extended precision.
long double bc_rate(const BCPair& pair, int m, int n);

/// g is indexed 0..; entries up to n_max must be positive. The result has
/// order n_max, so it drives systems of up to n_max particles.
RateTable construct_rate_palrmp(std::span<const double> g, int n_max);

/// Homogeneous-only factorising rates with u(1,1) != u(2,1), built with the
/// inductive choice c(p) = 1 + max lower bound. n_max >= 3 is needed for
/// the table to witness failure of the inhomogeneous condition.
RateTable construct_rate_hpalrmp(std::span<const double> g, int n_max);

/// (b, c) pair behind construct_rate_hpalrmp.
BCPair construct_bc(std::span<const double> g, int n_max);

/// u(m, n) = phi(m) phi(n+1) g(n+1)/g(n), phi(0) = 0. The default
/// phi(m) = m makes u(., 0) non-constant.
RateTable construct_rate_slrmp(std::span<const double> g, int n_max,
                               const std::function<double(int)>& phi = {});

/// Square table F(n, m), n, m = 1..K, stored 0-based. NaN marks an entry
/// that is not available; equations touching it are skipped.
using PairTable = std::vector<std::vector<double>>;

struct Decomposition {
  bool ok = false;
  std::vector<double> h;
  std::optional<std::pair<int, int>> witness;
  double residual = 0.0;
};

/// Tries F(n, m) = h(n) - h(m) with h(n) = F(n, 1).
Decomposition circular_decompose(const PairTable& f, double tol = 1e-10);

/// F(m, n) = u(m, n) - u(1, m)/u(1, n-1) u(m+1, n-1) over the table's
/// triangle; decomposes exactly when the homogeneous condition holds.
PairTable hpalrmp_difference(const RateTable& u);

/// sum_{l=0}^{n-1} (c(1+l) - c(n-l)) prod_{k=1}^{l} b(k)/b(n-k).
long double consistency_sum(const BCPair& pair, int n);

}  // namespace lrmp
