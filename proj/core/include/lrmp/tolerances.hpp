#pragma once

#include <cstddef>

namespace lrmp {

/// Numerical thresholds shared by the solvers, checkers and oracles.
///
/// Every verdict the library produces is a comparison against one of these
/// fields, so a run is reproducible from the values recorded here.
struct Tolerances {
  /// Max |pi Q| relative to the largest rate for an accepted stationary solve.
  double residual = 1e-10;
  /// Max log-space residual for the product-form least-squares fit.
  double product_fit = 1e-8;
  /// Allowed deviation of sum(pi) from one.
  double normalization = 1e-12;
  /// Relative tolerance for rate-table condition checks.
  double check_rel = 1e-9;
  /// Absolute floor for rate-table condition checks.
  double check_abs = 1e-12;
  /// Tolerance for the circular difference decomposition.
  double decompose = 1e-10;
};

inline constexpr Tolerances kDefaultTolerances{};

/// Largest state space the dense stationary solver accepts.
inline constexpr std::size_t kDefaultCapacity = 20000;

// |a - b| <= max(rel * max(|a|, |b|), abs)
bool approx_equal(double a, double b, double rel, double abs);

}  // namespace lrmp
