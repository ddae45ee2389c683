#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lrmp/distribution.hpp"
#include "lrmp/dynamics.hpp"
#include "lrmp/tolerances.hpp"

namespace lrmp {

/// Spaces up to this size are solved with dense partial-pivot LU; larger
/// ones (still under the capacity cap) go through sparse LU.
inline constexpr std::size_t kDenseSolveLimit = 2000;

/// True when the transition digraph of the generator is strongly connected.
bool is_irreducible(const Generator& gen);

/// Stationary distribution of an irreducible generator.
///
/// One balance equation is replaced by the normalisation constraint and the
/// resulting square system is solved directly, followed by one step of
/// iterative refinement. Throws CapacityError above `capacity` states and
/// ReducibleError when the chain is not strongly connected.
Distribution stationary(const Generator& gen, std::size_t capacity = kDefaultCapacity,
                        const Tolerances& tol = kDefaultTolerances);

/// max over configurations of |inflow - outflow| under sigma.
double balance_residual(const Distribution& sigma, const Generator& gen);

struct BalanceReport {
  bool holds = true;
  double worst = 0.0;
  /// Configuration and, for detailed balance, the partner configuration of
  /// the worst term; for pairwise balance `site` names the matched site.
  std::optional<Configuration> witness;
  std::optional<Configuration> partner;
  std::optional<std::size_t> site;
  std::size_t checked = 0;
};

/// pi(eta) r(eta -> xi) == pi(xi) r(xi -> eta) for every transition.
BalanceReport check_detailed_balance(const Distribution& pi, const RateSpec& spec,
                                     const StateSpace& space, double tol = 1e-10);

/// Per-site pairing for the totally asymmetric process: at every eta and
/// site l, the current leaving eta by the unique hop into l must equal the
/// current entering eta by the unique hop out of l. Throws WrongVariantError
/// unless q == 0.
BalanceReport check_pairwise_balance_talrmp(const Distribution& pi, const RateSpec& spec,
                                            const StateSpace& space,
                                            bool fully_occupied_only = false,
                                            double tol = 1e-10);

struct ProductFit {
  bool product = false;
  double max_residual = 0.0;
  /// log g_l(n) for each site l and n = 0..N, gauge fixed by g_l(0) = 1.
  std::vector<std::vector<double>> log_g;
  double log_z = 0.0;
};

/// Least-squares fit of log pi(eta) = sum_l log g_l(eta_l) - log Z.
/// Throws DomainError when some entry of pi is not strictly positive.
ProductFit product_form_oracle(const Distribution& pi, const StateSpace& space,
                               const Tolerances& tol = kDefaultTolerances);

/// One member of a family fit: a distribution and the site parameters of
/// the system that produced it.
struct FamilyMember {
  Distribution pi;
  std::vector<double> x;
};

struct FamilyFit {
  bool product = false;
  double max_residual = 0.0;
  /// Distinct site-parameter values, and log f(x, n) for n = 0..N_max.
  std::vector<double> x_values;
  std::vector<std::vector<double>> log_f;
  /// Index into the member list of the worst-fitting distribution.
  std::size_t worst_member = 0;
};

/// Joint fit over several systems with one shared one-point function
/// f(x, n), keyed by site-parameter value, and a free normaliser per
/// system. Much sharper than fitting each system on its own: small spaces
/// such as two sites or one particle fit any positive vector.
FamilyFit product_form_oracle_family(const std::vector<FamilyMember>& members,
                                     const Tolerances& tol = kDefaultTolerances);

}  // namespace lrmp
