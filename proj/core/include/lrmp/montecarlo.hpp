#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lrmp/distribution.hpp"
#include "lrmp/dynamics.hpp"

namespace lrmp {

struct SimConfig {
  RateSpec spec;
  Configuration initial;
  /// Stop after this many jumps, or once simulated time reaches max_time;
  /// at least one of the two must be set.
  std::optional<std::uint64_t> max_events;
  std::optional<double> max_time;
  std::uint64_t seed = 0;
};

/// Time-weighted occupation frequencies, indexed by colex rank.
struct EmpiricalMeasure {
  std::size_t sites = 0;
  int particles = 0;
  std::vector<double> freq;
  double total_time = 0.0;
  std::uint64_t events = 0;
};

/// Direct-method kinetic Monte Carlo.
///
/// Every step re-enumerates the legal transitions, draws an exponential
/// holding time at the total exit rate and picks a transition with
/// probability proportional to its rate. Randomness comes from
/// std::mt19937_64 seeded with cfg.seed; uniforms are the top 53 bits of
/// one draw, so a seed fixes the trajectory on every platform.
EmpiricalMeasure simulate(const SimConfig& cfg);

double tv_distance(const EmpiricalMeasure& a, const Distribution& b);
double tv_distance(const Distribution& a, const Distribution& b);

}  // namespace lrmp
