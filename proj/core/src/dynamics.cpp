#include "lrmp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "lrmp/errors.hpp"

namespace lrmp {

RateTable::RateTable(int order) : order_(order) {
  if (order < 0) throw InvalidInput("rate table order must be non-negative");
  const auto m = static_cast<std::size_t>(order) + 1;
  values_.assign(m * (m + 1) / 2, 0.0);
}

RateTable RateTable::from_function(int order, const std::function<double(int, int)>& u) {
  RateTable table(order);
  for (int m = 1; m <= order; ++m) {
    for (int n = 0; m + n <= order; ++n) table.set(m, n, u(m, n));
  }
  return table;
}

std::size_t RateTable::offset(int m, int n) const {
  const auto mm = static_cast<std::size_t>(m);
  const auto width = static_cast<std::size_t>(order_) + 1;
  return mm * width - mm * (mm - (mm > 0 ? 1 : 0)) / 2 + static_cast<std::size_t>(n);
}

double RateTable::operator()(int m, int n) const {
  if (!defined(m, n)) {
    throw DimensionMismatchError("rate u(" + std::to_string(m) + "," + std::to_string(n) +
                                 ") outside table of order " + std::to_string(order_));
  }
  return values_[offset(m, n)];
}

void RateTable::set(int m, int n, double value) {
  if (!defined(m, n)) {
    throw DimensionMismatchError("rate u(" + std::to_string(m) + "," + std::to_string(n) +
                                 ") outside table of order " + std::to_string(order_));
  }
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError("rates must be finite and non-negative");
  }
  if (m == 0 && value != 0.0) throw DomainError("u(0, n) must be zero");
  values_[offset(m, n)] = value;
}

std::vector<std::vector<double>> RateTable::rows() const {
  std::vector<std::vector<double>> out;
  for (int m = 0; m <= order_; ++m) {
    std::vector<double> row;
    for (int n = 0; m + n <= order_; ++n) row.push_back((*this)(m, n));
    out.push_back(std::move(row));
  }
  return out;
}

RateTable RateTable::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InvalidInput("rate table needs at least one row");
  const int order = static_cast<int>(rows.size()) - 1;
  RateTable table(order);
  for (int m = 0; m <= order; ++m) {
    const auto& row = rows[static_cast<std::size_t>(m)];
    if (static_cast<int>(row.size()) < order - m + 1) {
      throw DimensionMismatchError("rate table row " + std::to_string(m) + " is too short");
    }
    for (std::size_t n = 0; n < row.size(); ++n) {
      if (m == 0 && row[n] != 0.0) throw DomainError("u(0, n) must be zero");
      if (m + static_cast<int>(n) <= order) table.set(m, static_cast<int>(n), row[n]);
    }
  }
  return table;
}

RateTable RateTable::truncated(int order) const {
  if (order > order_) throw InvalidInput("cannot widen a rate table");
  RateTable out(order);
  for (int m = 1; m <= order; ++m) {
    for (int n = 0; m + n <= order; ++n) out.set(m, n, (*this)(m, n));
  }
  return out;
}

RateSpec::RateSpec(RateTable table, double asymmetry, std::vector<double> site_params)
    : u(std::move(table)), q(asymmetry), x(std::move(site_params)) {
  validate();
}

void RateSpec::validate() const {
  if (!std::isfinite(q) || q < 0.0) throw InvalidInput("asymmetry q must be non-negative");
  if (x.empty()) throw InvalidLatticeError("lattice needs at least one site");
  for (double v : x) {
    if (!std::isfinite(v) || v <= 0.0) throw InvalidInput("site parameters must be positive");
  }
}

std::vector<double> unit_params(std::size_t sites) { return std::vector<double>(sites, 1.0); }

bool path_is_clear(const Configuration& eta, std::size_t from, std::size_t to, Direction dir) {
  const std::size_t L = eta.sites();
  const long step = dir == Direction::Right ? 1 : -1;
  for (std::size_t s = wrap_site(from, step, L); s != to; s = wrap_site(s, step, L)) {
    if (eta[s] != 0) return false;
  }
  return true;
}

bool crosses_edge(std::size_t from, std::size_t to, Direction dir, std::size_t edge,
                  std::size_t sites) {
  const long L = static_cast<long>(sites);
  auto mod = [L](long v) { return ((v % L) + L) % L; };
  const long f = static_cast<long>(from);
  const long t = static_cast<long>(to);
  const long e = static_cast<long>(edge);
  if (dir == Direction::Right) return mod(e - f) < mod(t - f);
  return mod(f - 1 - e) < mod(f - t);
}

std::vector<Transition> enumerate_transitions(const Configuration& eta, const RateSpec& spec) {
  const std::size_t L = eta.sites();
  if (L != spec.sites()) throw DimensionMismatchError("site parameters do not match lattice size");
  if (eta.total() > spec.u.order()) {
    throw DimensionMismatchError("rate table order " + std::to_string(spec.u.order()) +
                                 " below particle count " + std::to_string(eta.total()));
  }
  std::vector<Transition> out;
  const std::vector<std::size_t> occupied = occupied_sites(eta);
  const std::size_t K = occupied.size();
  if (K == 0 || L == 1) return out;

  auto emit = [&](std::size_t from, std::size_t to, Direction dir) {
    double rate = spec.x[to] * spec.u(eta[from], eta[to]);
    if (dir == Direction::Left) rate *= spec.q;
    if (rate > 0.0) out.push_back({from, to, dir, rate, apply_move(eta, from, to)});
  };

  for (std::size_t a = 0; a < K; ++a) {
    const std::size_t s = occupied[a];
    const std::size_t next = occupied[(a + 1) % K];
    const std::size_t prev = occupied[(a + K - 1) % K];
    const std::size_t reach_right = K == 1 ? L - 1 : wrap_site(next, -static_cast<long>(s), L);
    for (std::size_t d = 1; d <= reach_right; ++d) {
      emit(s, wrap_site(s, static_cast<long>(d), L), Direction::Right);
    }
    if (spec.q > 0.0) {
      const std::size_t reach_left = K == 1 ? L - 1 : wrap_site(s, -static_cast<long>(prev), L);
      for (std::size_t d = 1; d <= reach_left; ++d) {
        emit(s, wrap_site(s, -static_cast<long>(d), L), Direction::Left);
      }
    }
  }
  return out;
}

Generator build_generator(const StateSpace& space, const RateSpec& spec) {
  if (space.sites() != spec.sites()) {
    throw DimensionMismatchError("site parameters do not match lattice size");
  }
  if (space.particles() > spec.u.order()) {
    throw DimensionMismatchError("rate table order below particle count");
  }
  const auto n = static_cast<Eigen::Index>(space.size());
  std::vector<Eigen::Triplet<double>> entries;
  double max_rate = 0.0;
  Eigen::Index row = 0;
  for (const Configuration& eta : space.configurations()) {
    double exit = 0.0;
    for (const Transition& t : enumerate_transitions(eta, spec)) {
      entries.emplace_back(row, static_cast<Eigen::Index>(space.rank(t.target)), t.rate);
      exit += t.rate;
    }
    entries.emplace_back(row, row, -exit);
    max_rate = std::max(max_rate, exit);
    ++row;
  }
  Generator gen{space, Eigen::SparseMatrix<double, Eigen::RowMajor>(n, n), max_rate};
  gen.matrix.setFromTriplets(entries.begin(), entries.end());
  gen.matrix.makeCompressed();
  return gen;
}

Generator scaled(const Generator& gen, double factor) {
  Generator out = gen;
  out.matrix *= factor;
  out.max_rate *= factor;
  return out;
}

void write_generator_csv(std::ostream& os, const Generator& gen) {
  os << "row,col,rate\n";
  os.precision(17);
  for (Eigen::Index r = 0; r < gen.matrix.outerSize(); ++r) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(gen.matrix, r); it; ++it) {
      os << it.row() << ',' << it.col() << ',' << it.value() << '\n';
    }
  }
}

CurrentReport current_decomposition(const Distribution& sigma, const StateSpace& space,
                                    const Configuration& eta, const RateSpec& spec) {
  if (!sigma.matches(space)) throw DimensionMismatchError("distribution does not match space");
  if (!space.contains(eta)) throw DimensionMismatchError("configuration not in state space");
  CurrentReport report;
  const double p = sigma[space.rank(eta)];
  for (const Transition& t : enumerate_transitions(eta, spec)) {
    (t.direction == Direction::Right ? report.orc : report.olc) += p * t.rate;
  }
  // Predecessors: a particle now at `arrival` came from `departure`.
  const std::size_t L = eta.sites();
  for (std::size_t arrival : occupied_sites(eta)) {
    for (std::size_t departure = 0; departure < L; ++departure) {
      if (departure == arrival) continue;
      const Configuration prior = apply_move(eta, arrival, departure);
      const double prior_p = sigma[space.rank(prior)];
      for (const Transition& t : enumerate_transitions(prior, spec)) {
        if (t.from != departure || t.to != arrival) continue;
        (t.direction == Direction::Right ? report.irc : report.ilc) += prior_p * t.rate;
      }
    }
  }
  return report;
}

double edge_current(const Distribution& pi, const StateSpace& space, const RateSpec& spec,
                    std::size_t edge) {
  if (!pi.matches(space)) throw DimensionMismatchError("distribution does not match space");
  if (edge >= space.sites()) throw InvalidInput("edge index outside lattice");
  double current = 0.0;
  std::size_t rank = 0;
  for (const Configuration& eta : space.configurations()) {
    const double p = pi[rank++];
    for (const Transition& t : enumerate_transitions(eta, spec)) {
      if (!crosses_edge(t.from, t.to, t.direction, edge, space.sites())) continue;
      current += (t.direction == Direction::Right ? 1.0 : -1.0) * p * t.rate;
    }
  }
  return current;
}

RateSpec rotate_spec(const RateSpec& spec, long shifts) {
  RateSpec out = spec;
  const std::size_t L = spec.sites();
  for (std::size_t l = 0; l < L; ++l) out.x[l] = spec.x[wrap_site(l, -shifts, L)];
  return out;
}

}  // namespace lrmp
