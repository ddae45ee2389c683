#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lrmp/exact.hpp"

namespace lrmp::fixtures {

inline std::vector<double> random_params(std::mt19937_64& rng, std::size_t sites,
                                         double lo = 0.2, double hi = 3.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> x(sites);
  for (double& v : x) v = d(rng);
  return x;
}

inline RateTable random_table(std::mt19937_64& rng, int order, double lo = 0.2, double hi = 2.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  return RateTable::from_function(order, [&](int, int) { return d(rng); });
}

inline Distribution solve(std::size_t L, int N, const RateSpec& spec) {
  return stationary(build_generator(StateSpace(L, N), spec));
}

}  // namespace lrmp::fixtures
