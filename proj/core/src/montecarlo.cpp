#include "lrmp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lrmp/errors.hpp"

namespace lrmp {

namespace {

// Uniform in (0, 1]; never zero so that log() below is finite.
double uniform_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

EmpiricalMeasure simulate(const SimConfig& cfg) {
  cfg.spec.validate();
  if (!cfg.max_events && !cfg.max_time) throw InvalidInput("simulation needs a budget");
  if (cfg.max_events && *cfg.max_events == 0) throw InvalidInput("event budget must be positive");
  if (cfg.max_time && !(*cfg.max_time > 0.0)) throw InvalidInput("time budget must be positive");
  if (cfg.initial.sites() != cfg.spec.sites()) {
    throw DimensionMismatchError("initial configuration does not match site parameters");
  }

  const StateSpace space(cfg.initial.sites(), cfg.initial.total());
  EmpiricalMeasure out{space.sites(), space.particles(), std::vector<double>(space.size(), 0.0),
                       0.0, 0};
  std::mt19937_64 rng(cfg.seed);
  Configuration eta = cfg.initial;

  while (true) {
    const std::vector<Transition> moves = enumerate_transitions(eta, cfg.spec);
    double exit = 0.0;
    for (const Transition& t : moves) exit += t.rate;
    if (moves.empty()) {
      // Absorbed: all long-run occupation sits on eta.
      std::fill(out.freq.begin(), out.freq.end(), 0.0);
      out.freq[space.rank(eta)] = 1.0;
      out.total_time = cfg.max_time.value_or(0.0);
      return out;
    }
    double hold = -std::log(uniform_open(rng)) / exit;
    bool last = false;
    if (cfg.max_time && out.total_time + hold >= *cfg.max_time) {
      hold = *cfg.max_time - out.total_time;
      last = true;
    }
    out.freq[space.rank(eta)] += hold;
    out.total_time += hold;
    if (last) break;

    double target = uniform_open(rng) * exit;
    std::size_t pick = 0;
    while (pick + 1 < moves.size() && target > moves[pick].rate) {
      target -= moves[pick].rate;
      ++pick;
    }
    eta = moves[pick].target;
    ++out.events;
    if (cfg.max_events && out.events >= *cfg.max_events) break;
  }
  if (out.total_time > 0.0) {
    for (double& f : out.freq) f /= out.total_time;
  }
  return out;
}

double tv_distance(const EmpiricalMeasure& a, const Distribution& b) {
  if (a.sites != b.sites || a.particles != b.particles || a.freq.size() != b.size()) {
    throw DimensionMismatchError("measures live on different state spaces");
  }
  return tv_distance(a.freq, b.probs);
}

double tv_distance(const Distribution& a, const Distribution& b) {
  if (a.sites != b.sites || a.particles != b.particles || a.size() != b.size()) {
    throw DimensionMismatchError("measures live on different state spaces");
  }
  return tv_distance(a.probs, b.probs);
}

}  // namespace lrmp
