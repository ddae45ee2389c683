#include "lrmp/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lrmp/distribution.hpp"
#include "lrmp/errors.hpp"
#include "lrmp/tolerances.hpp"

namespace lrmp {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

void check_site(const Configuration& eta, std::size_t site) {
  if (site >= eta.sites()) {
    throw InvalidInput("site " + std::to_string(site) + " outside lattice of " +
                       std::to_string(eta.sites()) + " sites");
  }
}

}  // namespace

Configuration::Configuration(std::vector<int> occupations) : occ_(std::move(occupations)) {
  for (int v : occ_) {
    if (v < 0) throw InvalidInput("negative occupation in configuration");
    total_ += v;
  }
}

Configuration::Configuration(std::initializer_list<int> occupations)
    : Configuration(std::vector<int>(occupations)) {}

std::size_t wrap_site(std::size_t site, long offset, std::size_t sites) {
  const long n = static_cast<long>(sites);
  long r = (static_cast<long>(site) + offset) % n;
  if (r < 0) r += n;
  return static_cast<std::size_t>(r);
}

Configuration apply_move(const Configuration& eta, std::size_t from, std::size_t to) {
  check_site(eta, from);
  check_site(eta, to);
  if (from == to) throw SelfMoveError("move from a site to itself");
  if (eta[from] == 0) {
    throw EmptyDepartureError("no particle at departure site " + std::to_string(from));
  }
  std::vector<int> occ = eta.vector();
  --occ[from];
  ++occ[to];
  return Configuration(std::move(occ));
}

Configuration add_particle(const Configuration& eta, std::size_t site) {
  check_site(eta, site);
  std::vector<int> occ = eta.vector();
  ++occ[site];
  return Configuration(std::move(occ));
}

std::vector<std::size_t> occupied_sites(const Configuration& eta) {
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < eta.sites(); ++i) {
    if (eta[i] > 0) sites.push_back(i);
  }
  return sites;
}

CompressedConfiguration compress(const Configuration& eta, std::span<const double> x) {
  if (eta.total() == 0) throw PreconditionError("cannot compress an empty configuration");
  if (!x.empty() && x.size() != eta.sites()) {
    throw DimensionMismatchError("site parameters do not match lattice size");
  }
  CompressedConfiguration out;
  std::vector<int> occ;
  for (std::size_t s : occupied_sites(eta)) {
    occ.push_back(eta[s]);
    if (!x.empty()) out.x.push_back(x[s]);
  }
  out.configuration = Configuration(std::move(occ));
  return out;
}

CompressedConfiguration compress_with_empty(const Configuration& eta, std::span<const double> x) {
  if (eta.sites() == 0 || eta[eta.sites() - 1] != 0) {
    throw PreconditionError("last site must be empty");
  }
  if (!x.empty() && x.size() != eta.sites()) {
    throw DimensionMismatchError("site parameters do not match lattice size");
  }
  CompressedConfiguration out;
  std::vector<int> occ;
  for (std::size_t s : occupied_sites(eta)) {
    occ.push_back(eta[s]);
    if (!x.empty()) out.x.push_back(x[s]);
  }
  occ.push_back(0);
  if (!x.empty()) out.x.push_back(x.back());
  out.configuration = Configuration(std::move(occ));
  return out;
}

Configuration shift(const Configuration& eta) {
  std::vector<int> occ = eta.vector();
  std::rotate(occ.rbegin(), occ.rbegin() + (occ.empty() ? 0 : 1), occ.rend());
  return Configuration(std::move(occ));
}

StateSpace::StateSpace(std::size_t sites, int particles)
    : sites_(sites), particles_(particles), size_(0), binom_cols_(0) {
  if (sites == 0) throw InvalidLatticeError("lattice needs at least one site");
  if (particles < 0) throw InvalidInput("particle count must be non-negative");

  // Rank terms only ever need C(a, k) with k <= N.
  const std::size_t rows = sites + static_cast<std::size_t>(particles);
  binom_cols_ = static_cast<std::size_t>(particles) + 1;
  binom_.assign(rows * binom_cols_, 0);
  for (std::size_t a = 0; a < rows; ++a) {
    binom_[a * binom_cols_] = 1;
    for (std::size_t k = 1; k < binom_cols_ && k <= a; ++k) {
      binom_[a * binom_cols_ + k] =
          saturating_add(binom_[(a - 1) * binom_cols_ + k - 1], binom_[(a - 1) * binom_cols_ + k]);
    }
  }
  size_ = choose(sites + static_cast<std::size_t>(particles) - 1,
                 static_cast<std::size_t>(particles));
  if (size_ == kSaturated) throw CapacityError("state space too large to index");
}

std::uint64_t StateSpace::choose(std::size_t a, std::size_t k) const {
  if (k > a) return 0;
  return binom_[a * binom_cols_ + k];
}

std::uint64_t StateSpace::rank(const Configuration& eta) const {
  if (!contains(eta)) throw DimensionMismatchError("configuration not in state space");
  std::uint64_t r = 0;
  std::size_t prefix = static_cast<std::size_t>(eta[0]);
  for (std::size_t j = 1; j < sites_; ++j) {
    const std::size_t before = prefix;
    prefix += static_cast<std::size_t>(eta[j]);
    r += choose(prefix + j, prefix) - choose(before + j, before);
  }
  return r;
}

Configuration StateSpace::unrank(std::uint64_t index) const {
  if (index >= size_) throw InvalidInput("rank out of range");
  std::vector<int> occ(sites_, 0);
  std::uint64_t r = index;
  std::size_t prefix = static_cast<std::size_t>(particles_);
  for (std::size_t j = sites_ - 1; j >= 1; --j) {
    const std::uint64_t top = choose(prefix + j, prefix);
    // smallest remaining prefix whose block offset fits in r
    std::size_t lo = 0;
    std::size_t hi = prefix;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (top - choose(mid + j, mid) <= r) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    r -= top - choose(lo + j, lo);
    occ[j] = static_cast<int>(prefix - lo);
    prefix = lo;
  }
  occ[0] = static_cast<int>(prefix);
  return Configuration(std::move(occ));
}

std::vector<Configuration> StateSpace::configurations() const {
  std::vector<Configuration> out;
  out.reserve(static_cast<std::size_t>(size_));
  std::vector<int> occ(sites_, 0);
  occ[0] = particles_;
  do {
    out.emplace_back(occ);
  } while (next_configuration(occ));
  return out;
}

bool StateSpace::contains(const Configuration& eta) const {
  return eta.sites() == sites_ && eta.total() == particles_;
}

StateSpace enumerate(std::size_t sites, int particles) { return StateSpace(sites, particles); }

bool next_configuration(std::vector<int>& occ) {
  const auto first = std::find_if(occ.begin(), occ.end(), [](int v) { return v > 0; });
  if (first == occ.end() || first + 1 == occ.end()) return false;
  const int v = *first;
  *first = 0;
  *(first + 1) += 1;
  occ.front() = v - 1;
  return true;
}

Distribution uniform_distribution(const StateSpace& space) {
  return Distribution{space.sites(), space.particles(),
                      std::vector<double>(space.size(), 1.0 / static_cast<double>(space.size()))};
}

double tv_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DimensionMismatchError("distributions differ in length");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return 0.5 * sum;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DimensionMismatchError("vectors differ in length");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

bool approx_equal(double a, double b, double rel, double abs) {
  return std::abs(a - b) <= std::max(rel * std::max(std::abs(a), std::abs(b)), abs);
}

}  // namespace lrmp
