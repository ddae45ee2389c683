#include "lrmp/exact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include "lrmp/errors.hpp"

namespace lrmp {

namespace {

using RowMajorSparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

std::vector<bool> reachable(const RowMajorSparse& adj, Eigen::Index start) {
  std::vector<bool> seen(static_cast<std::size_t>(adj.rows()), false);
  std::queue<Eigen::Index> frontier;
  seen[static_cast<std::size_t>(start)] = true;
  frontier.push(start);
  while (!frontier.empty()) {
    const Eigen::Index r = frontier.front();
    frontier.pop();
    for (RowMajorSparse::InnerIterator it(adj, r); it; ++it) {
      if (it.col() == r || it.value() <= 0.0) continue;
      const auto c = static_cast<std::size_t>(it.col());
      if (!seen[c]) {
        seen[c] = true;
        frontier.push(it.col());
      }
    }
  }
  return seen;
}

bool all_true(const std::vector<bool>& v) {
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

double max_abs_residual(const Eigen::VectorXd& pi, const RowMajorSparse& q) {
  const Eigen::VectorXd r = q.transpose() * pi;
  return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
}

}  // namespace

bool is_irreducible(const Generator& gen) {
  if (gen.matrix.rows() <= 1) return true;
  if (!all_true(reachable(gen.matrix, 0))) return false;
  const RowMajorSparse reversed = gen.matrix.transpose();
  return all_true(reachable(reversed, 0));
}

Distribution stationary(const Generator& gen, std::size_t capacity, const Tolerances& tol) {
  const std::size_t n = gen.size();
  if (n > capacity) {
    throw CapacityError("state space of " + std::to_string(n) + " states exceeds capacity " +
                        std::to_string(capacity));
  }
  Distribution out{gen.space.sites(), gen.space.particles(), std::vector<double>(n, 1.0)};
  if (n <= 1) return out;
  if (!is_irreducible(gen)) throw ReducibleError("transition digraph is not strongly connected");

  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
  rhs(dim - 1) = 1.0;
  Eigen::VectorXd pi;

  if (n <= kDenseSolveLimit) {
    Eigen::MatrixXd a = Eigen::MatrixXd(gen.matrix).transpose();
    a.row(dim - 1).setOnes();
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    pi = lu.solve(rhs);
    pi += lu.solve(Eigen::VectorXd(rhs - a * pi));
  } else {
    Eigen::SparseMatrix<double> a = gen.matrix.transpose();
    a.prune([dim](Eigen::Index row, Eigen::Index, double) { return row != dim - 1; });
    std::vector<Eigen::Triplet<double>> ones;
    for (Eigen::Index c = 0; c < dim; ++c) ones.emplace_back(dim - 1, c, 1.0);
    Eigen::SparseMatrix<double> last(dim, dim);
    last.setFromTriplets(ones.begin(), ones.end());
    a += last;
    a.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw StructuralError("sparse factorisation failed");
    pi = lu.solve(rhs);
    pi += lu.solve(Eigen::VectorXd(rhs - a * pi));
  }

  pi /= pi.sum();
  const double scale = std::max(gen.max_rate, 1.0);
  if (!pi.allFinite() || max_abs_residual(pi, gen.matrix) > tol.residual * scale) {
    throw StructuralError("stationary solve did not reach the residual tolerance");
  }
  out.probs.assign(pi.data(), pi.data() + pi.size());
  return out;
}

double balance_residual(const Distribution& sigma, const Generator& gen) {
  if (sigma.size() != gen.size()) throw DimensionMismatchError("distribution size mismatch");
  const Eigen::Map<const Eigen::VectorXd> v(sigma.probs.data(),
                                            static_cast<Eigen::Index>(sigma.size()));
  return max_abs_residual(v, gen.matrix);
}

BalanceReport check_detailed_balance(const Distribution& pi, const RateSpec& spec,
                                     const StateSpace& space, double tol) {
  if (!pi.matches(space)) throw DimensionMismatchError("distribution does not match space");
  BalanceReport report;
  for (const Configuration& eta : space.configurations()) {
    const double p = pi[space.rank(eta)];
    // Aggregate parallel moves so that eta -> xi is compared as one edge.
    std::map<Configuration, double> forward;
    for (const Transition& t : enumerate_transitions(eta, spec)) forward[t.target] += t.rate;
    for (const auto& [xi, rate] : forward) {
      double back = 0.0;
      for (const Transition& t : enumerate_transitions(xi, spec)) {
        if (t.target == eta) back += t.rate;
      }
      const double gap = std::abs(p * rate - pi[space.rank(xi)] * back);
      ++report.checked;
      if (gap > report.worst) {
        report.worst = gap;
        report.witness = eta;
        report.partner = xi;
      }
    }
  }
  report.holds = report.worst <= tol;
  return report;
}

BalanceReport check_pairwise_balance_talrmp(const Distribution& pi, const RateSpec& spec,
                                            const StateSpace& space, bool fully_occupied_only,
                                            double tol) {
  if (spec.q != 0.0) throw WrongVariantError("pairwise balance pairing requires q = 0");
  if (!pi.matches(space)) throw DimensionMismatchError("distribution does not match space");
  const std::size_t L = space.sites();
  BalanceReport report;
  for (const Configuration& eta : space.configurations()) {
    const std::vector<std::size_t> occupied = occupied_sites(eta);
    if (fully_occupied_only && occupied.size() != L) continue;
    const double p = pi[space.rank(eta)];
    for (std::size_t l = 0; l < L; ++l) {
      // Nearest occupied sites strictly left and strictly right of l.
      std::optional<std::size_t> left;
      std::optional<std::size_t> right;
      for (long d = 1; d < static_cast<long>(L); ++d) {
        const std::size_t s = wrap_site(l, -d, L);
        if (!left && eta[s] > 0) left = s;
        const std::size_t r = wrap_site(l, d, L);
        if (!right && eta[r] > 0) right = r;
      }
      double out = 0.0;
      if (left) out = p * spec.x[l] * spec.u(eta[*left], eta[l]);
      double in = 0.0;
      if (right) {
        const Configuration prior = apply_move(eta, *right, l);
        in = pi[space.rank(prior)] * spec.x[*right] * spec.u(eta[l] + 1, eta[*right] - 1);
      }
      const double gap = std::abs(out - in);
      ++report.checked;
      if (gap > report.worst) {
        report.worst = gap;
        report.witness = eta;
        report.site = l;
      }
    }
  }
  report.holds = report.worst <= tol;
  return report;
}

ProductFit product_form_oracle(const Distribution& pi, const StateSpace& space,
                               const Tolerances& tol) {
  if (!pi.matches(space)) throw DimensionMismatchError("distribution does not match space");
  for (double v : pi.probs) {
    if (!(v > 0.0)) throw DomainError("product-form fit needs a strictly positive distribution");
  }
  const std::size_t L = space.sites();
  const int N = space.particles();
  const auto rows = static_cast<Eigen::Index>(space.size());
  const auto cols = static_cast<Eigen::Index>(L * static_cast<std::size_t>(N) + 1);
  // Column layout: a_l(n) for n = 1..N at l*N + n - 1, then the constant.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd y(rows);
  Eigen::Index r = 0;
  for (const Configuration& eta : space.configurations()) {
    for (std::size_t l = 0; l < L; ++l) {
      if (eta[l] > 0) a(r, static_cast<Eigen::Index>(l * N + eta[l] - 1)) = 1.0;
    }
    a(r, cols - 1) = 1.0;
    y(r) = std::log(pi[static_cast<std::size_t>(r)]);
    ++r;
  }
  const Eigen::VectorXd theta = a.completeOrthogonalDecomposition().solve(y);
  ProductFit fit;
  fit.max_residual = rows == 0 ? 0.0 : (a * theta - y).cwiseAbs().maxCoeff();
  fit.product = fit.max_residual < tol.product_fit;
  fit.log_g.assign(L, std::vector<double>(static_cast<std::size_t>(N) + 1, 0.0));
  for (std::size_t l = 0; l < L; ++l) {
    for (int n = 1; n <= N; ++n) {
      fit.log_g[l][static_cast<std::size_t>(n)] = theta(static_cast<Eigen::Index>(l * N + n - 1));
    }
  }
  fit.log_z = -theta(cols - 1);
  return fit;
}

FamilyFit product_form_oracle_family(const std::vector<FamilyMember>& members,
                                     const Tolerances& tol) {
  FamilyFit fit;
  int n_max = 0;
  Eigen::Index rows = 0;
  for (const FamilyMember& m : members) {
    if (m.x.size() != m.pi.sites) throw DimensionMismatchError("site parameters mismatch");
    n_max = std::max(n_max, m.pi.particles);
    rows += static_cast<Eigen::Index>(m.pi.size());
    for (double v : m.pi.probs) {
      if (!(v > 0.0)) throw DomainError("product-form fit needs strictly positive distributions");
    }
    for (double v : m.x) {
      if (std::find(fit.x_values.begin(), fit.x_values.end(), v) == fit.x_values.end()) {
        fit.x_values.push_back(v);
      }
    }
  }
  std::sort(fit.x_values.begin(), fit.x_values.end());
  const auto nx = static_cast<Eigen::Index>(fit.x_values.size());
  const Eigen::Index shared = nx * n_max;
  const auto cols = shared + static_cast<Eigen::Index>(members.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd y(rows);
  std::vector<std::size_t> owner;
  Eigen::Index r = 0;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const FamilyMember& m = members[k];
    std::vector<Eigen::Index> key;
    for (double v : m.x) {
      key.push_back(std::lower_bound(fit.x_values.begin(), fit.x_values.end(), v) -
                    fit.x_values.begin());
    }
    const StateSpace space(m.pi.sites, m.pi.particles);
    for (const Configuration& eta : space.configurations()) {
      for (std::size_t l = 0; l < eta.sites(); ++l) {
        if (eta[l] > 0) a(r, key[l] * n_max + eta[l] - 1) += 1.0;
      }
      a(r, shared + static_cast<Eigen::Index>(k)) = 1.0;
      y(r) = std::log(m.pi[space.rank(eta)]);
      owner.push_back(k);
      ++r;
    }
  }
  const Eigen::VectorXd theta = a.completeOrthogonalDecomposition().solve(y);
  const Eigen::VectorXd resid = (a * theta - y).cwiseAbs();
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (resid(i) > fit.max_residual) {
      fit.max_residual = resid(i);
      fit.worst_member = owner[static_cast<std::size_t>(i)];
    }
  }
  fit.product = fit.max_residual < tol.product_fit;
  fit.log_f.assign(fit.x_values.size(), std::vector<double>(static_cast<std::size_t>(n_max) + 1));
  for (Eigen::Index v = 0; v < nx; ++v) {
    for (int n = 1; n <= n_max; ++n) {
      fit.log_f[static_cast<std::size_t>(v)][static_cast<std::size_t>(n)] = theta(v * n_max + n - 1);
    }
  }
  return fit;
}

}  // namespace lrmp
