#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace lrmp {

/// Occupation vector of a ring lattice.
///
/// Sites are 0-based in the C++ API; the JSON and CLI surfaces use the
/// same order, so entry i is site i+1 in ring notation. Site arithmetic
/// wraps modulo the number of sites.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<int> occupations);
  Configuration(std::initializer_list<int> occupations);

  std::size_t sites() const { return occ_.size(); }
  int total() const { return total_; }
  int operator[](std::size_t site) const { return occ_[site]; }
  std::span<const int> occupations() const { return occ_; }
  const std::vector<int>& vector() const { return occ_; }

  bool operator==(const Configuration&) const = default;
  auto operator<=>(const Configuration&) const = default;

 private:
  std::vector<int> occ_;
  int total_ = 0;
};

/// Site index `site + offset` reduced modulo `sites`.
std::size_t wrap_site(std::size_t site, long offset, std::size_t sites);

/// One particle moved from `from` to `to`.
Configuration apply_move(const Configuration& eta, std::size_t from, std::size_t to);

/// One extra particle at `site`.
Configuration add_particle(const Configuration& eta, std::size_t site);

/// Sites holding at least one particle, increasing.
std::vector<std::size_t> occupied_sites(const Configuration& eta);

/// A configuration together with the site parameters its sites carry.
struct CompressedConfiguration {
  Configuration configuration;
  std::vector<double> x;
};

/// Drops every empty site. `x`, when non-empty, is carried along.
CompressedConfiguration compress(const Configuration& eta, std::span<const double> x = {});

/// Drops every empty site except the last one, which must be empty.
CompressedConfiguration compress_with_empty(const Configuration& eta,
                                            std::span<const double> x = {});

/// Cyclic right rotation: (e1, ..., eL) -> (eL, e1, ..., e_{L-1}).
Configuration shift(const Configuration& eta);

/// The set of all weak compositions of N into L parts, ranked in
/// colexicographic order (the last site is the most significant).
///
/// Ranks use the combinatorial number system: the configurations preceding
/// eta are counted site by site with hockey-stick sums of binomials, so
/// rank and unrank cost O(L log N) and nothing is materialised.
class StateSpace {
 public:
  StateSpace(std::size_t sites, int particles);

  std::size_t sites() const { return sites_; }
  int particles() const { return particles_; }
  std::uint64_t size() const { return size_; }

  std::uint64_t rank(const Configuration& eta) const;
  Configuration unrank(std::uint64_t index) const;

  /// All configurations, in rank order.
  std::vector<Configuration> configurations() const;

  bool contains(const Configuration& eta) const;

  bool operator==(const StateSpace& other) const {
    return sites_ == other.sites_ && particles_ == other.particles_;
  }

 private:
  // C(a, b) for a <= N + L - 1, b <= L - 1; saturates at UINT64_MAX.
  std::uint64_t choose(std::size_t a, std::size_t b) const;

  std::size_t sites_;
  int particles_;
  std::uint64_t size_;
  std::size_t binom_cols_;
  std::vector<std::uint64_t> binom_;
};

StateSpace enumerate(std::size_t sites, int particles);

/// Colexicographic successor of eta; returns false after the last element.
bool next_configuration(std::vector<int>& occupations);

}  // namespace lrmp
