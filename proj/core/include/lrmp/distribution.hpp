#pragma once

#include <cstddef>
#include <vector>

#include "lrmp/statespace.hpp"

namespace lrmp {

/// Probability vector over a StateSpace, indexed by colex rank.
struct Distribution {
  std::size_t sites = 0;
  int particles = 0;
  std::vector<double> probs;

  double operator[](std::size_t rank) const { return probs[rank]; }
  std::size_t size() const { return probs.size(); }
  bool matches(const StateSpace& space) const {
    return sites == space.sites() && particles == space.particles() &&
           probs.size() == space.size();
  }
};

/// Uniform distribution on the whole space.
Distribution uniform_distribution(const StateSpace& space);

/// Half the l1 distance between two probability vectors of equal length.
double tv_distance(const std::vector<double>& a, const std::vector<double>& b);

/// Largest |a_i - b_i|.
double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace lrmp
