#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/SparseCore>

#include "lrmp/distribution.hpp"
#include "lrmp/statespace.hpp"

namespace lrmp {

/// Hop-rate table u(m, n): m particles at the departure site, n at the
/// arrival site.
///
/// A table of order M stores every entry with m + n <= M, which is exactly
/// what a system of at most M particles can reach. Row m = 0 is identically
/// zero. Entries outside the triangle are not part of the table; reading one
/// throws.
class RateTable {
 public:
  RateTable() = default;
  explicit RateTable(int order);

  static RateTable from_function(int order, const std::function<double(int, int)>& u);

  int order() const { return order_; }
  bool defined(int m, int n) const { return m >= 0 && n >= 0 && m + n <= order_; }

  double operator()(int m, int n) const;
  void set(int m, int n, double value);

  /// Rows m = 0..M, row m holding n = 0..M-m.
  std::vector<std::vector<double>> rows() const;
  static RateTable from_rows(const std::vector<std::vector<double>>& rows);

  /// Same table restricted to entries with m + n <= order.
  RateTable truncated(int order) const;

  bool operator==(const RateTable&) const = default;

 private:
  std::size_t offset(int m, int n) const;

  int order_ = 0;
  std::vector<double> values_;
};

/// Full rate specification of a partially asymmetric long-range
/// misanthrope process: right hops k -> l occur at x_l u(eta_k, eta_l),
/// left hops at q x_l u(eta_k, eta_l).
struct RateSpec {
  RateTable u;
  double q = 0.0;
  std::vector<double> x;

  RateSpec() = default;
  RateSpec(RateTable table, double asymmetry, std::vector<double> site_params);

  std::size_t sites() const { return x.size(); }
  /// Throws InvalidInput unless q >= 0, every x > 0 and every rate >= 0.
  void validate() const;
};

/// Homogeneous site parameters, x = (1, ..., 1).
std::vector<double> unit_params(std::size_t sites);

enum class Direction { Right, Left };

struct Transition {
  std::size_t from = 0;
  std::size_t to = 0;
  Direction direction = Direction::Right;
  double rate = 0.0;
  Configuration target;
};

/// Every legal move out of eta. A particle at an occupied site hops to any
/// site up to and including the nearest occupied site in the hop direction.
/// Left hops are only emitted when q > 0.
std::vector<Transition> enumerate_transitions(const Configuration& eta, const RateSpec& spec);

/// True when every site strictly between `from` and `to` in the hop
/// direction is empty.
bool path_is_clear(const Configuration& eta, std::size_t from, std::size_t to, Direction dir);

/// Whether the hop crosses edge (edge, edge+1).
bool crosses_edge(std::size_t from, std::size_t to, Direction dir, std::size_t edge,
                  std::size_t sites);

/// Row-major CTMC generator over a StateSpace. Parallel moves between the
/// same pair of states are summed into one entry.
struct Generator {
  StateSpace space;
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;
  double max_rate = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }
};

Generator build_generator(const StateSpace& space, const RateSpec& spec);

/// Scales every entry of the generator (time rescaling).
Generator scaled(const Generator& gen, double factor);

/// Writes "row,col,rate" lines for every stored entry, diagonal included.
void write_generator_csv(std::ostream& os, const Generator& gen);

/// Incoming / outgoing probability current at one configuration, split by
/// hop direction.
struct CurrentReport {
  double irc = 0.0;
  double orc = 0.0;
  double ilc = 0.0;
  double olc = 0.0;

  double net() const { return (irc - orc) + (ilc - olc); }
};

CurrentReport current_decomposition(const Distribution& sigma, const StateSpace& space,
                                    const Configuration& eta, const RateSpec& spec);

/// Net particle current across edge (edge, edge+1) under pi. A hop counts
/// once for every edge on its path; left hops count negatively.
double edge_current(const Distribution& pi, const StateSpace& space, const RateSpec& spec,
                    std::size_t edge);

/// Site parameters rotated right by `shifts`: site l takes x_{l - shifts}.
RateSpec rotate_spec(const RateSpec& spec, long shifts);

}  // namespace lrmp
