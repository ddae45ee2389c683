#include "lrmp/factorise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lrmp/errors.hpp"

namespace lrmp {

namespace {

int effective_load(const RateTable& u, const CheckOptions& opts) {
  return opts.max_load < 0 ? u.order() : std::min(u.order(), opts.max_load);
}

// Collects violations in scan order.
class Recorder {
 public:
  Recorder(std::string variant, int load, const CheckOptions& opts) : opts_(opts) {
    report_.variant = std::move(variant);
    report_.max_load = load;
  }

  void compare(const char* condition, std::vector<int> index, double lhs, double rhs) {
    if (approx_equal(lhs, rhs, opts_.tol.check_rel, opts_.tol.check_abs)) return;
    fail(condition, std::move(index), lhs, rhs);
  }

  void fail(const char* condition, std::vector<int> index, double lhs, double rhs) {
    ++report_.violations;
    if (report_.witnesses.size() < opts_.max_witnesses) {
      report_.witnesses.push_back({condition, std::move(index), lhs, rhs, std::abs(lhs - rhs)});
    }
  }

  CheckerReport finish(Extracted extracted) {
    report_.pass = report_.violations == 0;
    if (report_.pass) report_.extracted = std::move(extracted);
    return std::move(report_);
  }

 private:
  const CheckOptions& opts_;
  CheckerReport report_;
};

BCPair extract_bc(const RateTable& u, int load) {
  BCPair pair;
  for (int m = 0; m < load; ++m) pair.b.push_back(u(1, m));
  for (int m = 0; m < load; ++m) {
    if (m == 0) pair.c.push_back(-pair.b[0]);
    else if (m == 1) pair.c.push_back(0.0);
    else pair.c.push_back(u(m, 1) - u(1, m));
  }
  return pair;
}

void require_positive_g(std::span<const double> g, int n_max) {
  if (n_max < 1) throw InvalidInput("n_max must be at least 1");
  if (static_cast<int>(g.size()) < n_max + 1) {
    throw DimensionMismatchError("g needs entries 0.." + std::to_string(n_max));
  }
  for (int n = 0; n <= n_max; ++n) {
    const double v = g[static_cast<std::size_t>(n)];
    if (!std::isfinite(v) || v <= 0.0) throw DomainError("g must be positive");
  }
}

bool homogeneous(Variant v) { return v == Variant::Hpalrmp || v == Variant::Hslrmp; }

// log f(n) = n log x + sum_{i<=n} steps[i-1].
OnePointTable build_table(Variant variant, const std::vector<double>& steps,
                          std::span<const double> x, int n_max) {
  if (static_cast<int>(steps.size()) < n_max) {
    throw DimensionMismatchError("one-point data does not reach n_max");
  }
  auto row = [&](double xv) {
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) {
      out[static_cast<std::size_t>(n)] =
          out[static_cast<std::size_t>(n) - 1] + std::log(xv) + steps[static_cast<std::size_t>(n) - 1];
    }
    return out;
  };
  OnePointTable table;
  table.site_dependent = !homogeneous(variant);
  if (!table.site_dependent) {
    table.log_f.push_back(row(1.0));
    return table;
  }
  table.x_values.assign(x.begin(), x.end());
  std::sort(table.x_values.begin(), table.x_values.end());
  table.x_values.erase(std::unique(table.x_values.begin(), table.x_values.end()),
                       table.x_values.end());
  for (double v : table.x_values) {
    if (!(v > 0.0)) throw InvalidInput("site parameters must be positive");
    table.log_f.push_back(row(v));
  }
  return table;
}

std::vector<double> log_steps(const std::vector<double>& v, double divisor) {
  std::vector<double> out;
  for (double e : v) {
    if (!(e > 0.0) || !(divisor > 0.0)) throw DomainError("one-point factors must be positive");
    out.push_back(std::log(e) - std::log(divisor));
  }
  return out;
}

}  // namespace

CheckerReport check_palrmp(const RateTable& u, const CheckOptions& opts) {
  const int load = effective_load(u, opts);
  Recorder rec("palrmp", load, opts);
  for (int m = 2; m <= load; ++m) {
    for (int n = 0; m + n <= load; ++n) rec.compare("independent-of-m", {m, n}, u(m, n), u(1, n));
  }
  Phi phi;
  for (int n = 0; n < load; ++n) phi.phi.push_back(u(1, n));
  return rec.finish(std::move(phi));
}

CheckerReport check_hpalrmp(const RateTable& u, const CheckOptions& opts) {
  const int load = effective_load(u, opts);
  Recorder rec("hpalrmp", load, opts);
  for (int m = 1; m <= load; ++m) {
    for (int n = 1; m + n <= load; ++n) {
      const double denom = u(1, n - 1);
      if (denom == 0.0) {
        rec.fail("positivity", {1, n - 1}, 0.0, 1.0);
        continue;
      }
      const double rhs = u(1, m) / denom * u(m + 1, n - 1) + (u(m, 1) - u(1, m)) -
                         (u(n, 1) - u(1, n));
      rec.compare("a", {m, n}, u(m, n), rhs);
    }
  }
  for (int m = 2; m <= load; ++m) rec.compare("b", {m, 1}, u(m, 0), u(1, 0));
  return rec.finish(extract_bc(u, load));
}

CheckerReport check_hpalrmp_alt(const RateTable& u, const CheckOptions& opts) {
  const int load = effective_load(u, opts);
  Recorder rec("hpalrmp-alt", load, opts);
  for (int m = 1; m <= load; ++m) {
    for (int n = 0; m + n <= load && n + 1 <= load; ++n) {
      const double d1 = u(1, n);
      const double d2 = u(1, m - 1);
      if (d1 == 0.0 || d2 == 0.0) {
        rec.fail("positivity", {m, n}, 0.0, 1.0);
        continue;
      }
      rec.compare("a", {m, n}, u(m, n) / d1, u(n + 1, m - 1) / d2);
    }
  }
  for (int m = 1; m <= load; ++m) {
    for (int n = 1; m + n <= load; ++n) {
      rec.compare("b", {m, n}, u(m, n) - u(n, m),
                  (u(m, 1) - u(1, m)) - (u(n, 1) - u(1, n)));
    }
  }
  return rec.finish(extract_bc(u, load));
}

CheckerReport check_slrmp(const RateTable& u, const CheckOptions& opts) {
  const int load = effective_load(u, opts);
  Recorder rec("slrmp", load, opts);
  for (int m = 1; m <= load; ++m) {
    for (int n = 0; m + n <= load && n + 1 <= load; ++n) {
      const double dl = u(m, 0) * u(1, n);
      const double dr = u(n + 1, 0) * u(1, m - 1);
      if (dl == 0.0 || dr == 0.0) {
        throw DomainError("zero rate in ratio at (m,n)=(" + std::to_string(m) + "," +
                          std::to_string(n) + ")");
      }
      rec.compare("ratio", {m, n}, u(m, n) / dl, u(n + 1, m - 1) / dr);
    }
  }
  SlrmpRatios ratios;
  for (int n = 0; n < load; ++n) ratios.w.push_back(u(1, n) / u(n + 1, 0));
  return rec.finish(std::move(ratios));
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Talrmp: return "talrmp";
    case Variant::Palrmp: return "palrmp";
    case Variant::Hpalrmp: return "hpalrmp";
    case Variant::Slrmp: return "slrmp";
    case Variant::Hslrmp: return "hslrmp";
  }
  return "unknown";
}

Variant variant_from_string(const std::string& name) {
  for (Variant v : {Variant::Talrmp, Variant::Palrmp, Variant::Hpalrmp, Variant::Slrmp,
                    Variant::Hslrmp}) {
    if (to_string(v) == name) return v;
  }
  throw InvalidInput("unknown variant '" + name + "'");
}

int OnePointTable::n_max() const {
  return log_f.empty() ? -1 : static_cast<int>(log_f.front().size()) - 1;
}

double OnePointTable::log_value(double x, int n) const {
  if (n < 0 || n > n_max()) throw DimensionMismatchError("occupation beyond one-point table");
  std::size_t row = 0;
  if (site_dependent) {
    const auto it = std::find(x_values.begin(), x_values.end(), x);
    if (it == x_values.end()) throw DimensionMismatchError("site parameter not in table");
    row = static_cast<std::size_t>(it - x_values.begin());
  }
  return log_f[row][static_cast<std::size_t>(n)];
}

double OnePointTable::value(double x, int n) const { return std::exp(log_value(x, n)); }

OnePointTable one_point(Variant variant, const CheckerReport& report, std::span<const double> x,
                        int n_max) {
  if (!report.pass) throw InvalidInput("one-point function needs a passing checker report");
  const bool slrmp = variant == Variant::Slrmp || variant == Variant::Hslrmp;
  if (const auto* phi = std::get_if<Phi>(&report.extracted)) {
    const double div = slrmp ? phi->phi.at(0) : 1.0;
    return build_table(variant, log_steps(phi->phi, div), x, n_max);
  }
  if (const auto* bc = std::get_if<BCPair>(&report.extracted)) {
    if (variant != Variant::Hpalrmp && !slrmp) {
      throw WrongVariantError("a (b, c) pair only determines homogeneous weights");
    }
    if (variant == Variant::Slrmp) {
      throw WrongVariantError("a (b, c) pair does not determine inhomogeneous weights");
    }
    return build_table(variant, log_steps(bc->b, slrmp ? bc->b.at(0) : 1.0), x, n_max);
  }
  if (const auto* r = std::get_if<SlrmpRatios>(&report.extracted)) {
    if (!slrmp) throw WrongVariantError("symmetric ratios only determine symmetric weights");
    return build_table(variant, log_steps(r->w, 1.0), x, n_max);
  }
  throw InvalidInput("checker report carries no extracted parameters");
}

OnePointTable one_point_from_rates(Variant variant, const RateTable& u, std::span<const double> x,
                                   int n_max) {
  std::vector<double> steps;
  for (int n = 0; n < n_max; ++n) {
    double v = u(1, n);
    if (variant == Variant::Slrmp || variant == Variant::Hslrmp) v /= u(n + 1, 0);
    steps.push_back(v);
  }
  return build_table(variant, log_steps(steps, 1.0), x, n_max);
}

double log_partition(const OnePointTable& f, const StateSpace& space, std::span<const double> x) {
  if (x.size() != space.sites()) throw DimensionMismatchError("site parameters mismatch");
  std::vector<double> logs;
  logs.reserve(space.size());
  for (const Configuration& eta : space.configurations()) {
    double s = 0.0;
    for (std::size_t l = 0; l < eta.sites(); ++l) s += f.log_value(x[l], eta[l]);
    logs.push_back(s);
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - top);
  return top + std::log(acc);
}

Distribution factorised_distribution(const OnePointTable& f, const StateSpace& space,
                                     std::span<const double> x) {
  const double log_z = log_partition(f, space, x);
  Distribution out{space.sites(), space.particles(), {}};
  out.probs.reserve(space.size());
  for (const Configuration& eta : space.configurations()) {
    double s = -log_z;
    for (std::size_t l = 0; l < eta.sites(); ++l) s += f.log_value(x[l], eta[l]);
    out.probs.push_back(std::exp(s));
  }
  return out;
}

long double bc_rate(const BCPair& pair, int m, int n) {
  const auto& b = pair.b;
  const auto& c = pair.c;
  auto B = [&](int i) { return static_cast<long double>(b.at(static_cast<std::size_t>(i))); };
  auto C = [&](int i) { return static_cast<long double>(c.at(static_cast<std::size_t>(i))); };
  if (n == 0) return B(0);
  long double prod = 1.0L;  // prod_{k=1}^{l} b(m+k-1)/b(n-k)
  long double sum = 0.0L;
  for (int l = 0; l < n; ++l) {
    if (l > 0) prod *= B(m + l - 1) / B(n - l);
    sum += (C(m + l) - C(n - l)) * prod;
  }
  prod *= B(m + n - 1) / B(0);
  return B(0) * prod + sum;
}

RateTable u_from_bc(const BCPair& pair) {
  const int order = static_cast<int>(pair.b.size());
  if (order < 1) throw InvalidInput("b needs at least one entry");
  if (pair.c.size() < pair.b.size()) throw DimensionMismatchError("c shorter than b");
  for (double v : pair.b) {
    if (!(v > 0.0)) throw DomainError("b must be positive");
  }
  if (pair.c.size() > 1 && pair.c[1] != 0.0) throw PreconditionError("c(1) must be zero");
  RateTable u(order);
  for (int m = 1; m <= order; ++m) {
    for (int n = 0; m + n <= order; ++n) u.set(m, n, static_cast<double>(bc_rate(pair, m, n)));
  }
  return u;
}

RateTable construct_rate_palrmp(std::span<const double> g, int n_max) {
  require_positive_g(g, n_max);
  return RateTable::from_function(n_max, [&](int, int n) {
    return g[static_cast<std::size_t>(n) + 1] / g[static_cast<std::size_t>(n)];
  });
}

BCPair construct_bc(std::span<const double> g, int n_max) {
  require_positive_g(g, n_max);
  BCPair pair;
  for (int n = 0; n < n_max; ++n) {
    pair.b.push_back(g[static_cast<std::size_t>(n) + 1] / g[static_cast<std::size_t>(n)]);
  }
  pair.c.assign(pair.b.size(), 0.0);
  pair.c[0] = -pair.b[0];
  for (int p = 2; p < n_max; ++p) {
    // Every u(m, n) with m + n = p + 1, m >= 2 is K c(p) + R with K > 0.
    pair.c[static_cast<std::size_t>(p)] = 0.0;
    long double bound = -std::numeric_limits<long double>::infinity();
    for (int n = 1; n < p; ++n) {
      const int m = p + 1 - n;
      long double k = 1.0L;
      for (int j = 1; j < n; ++j) {
        k *= static_cast<long double>(pair.b[static_cast<std::size_t>(m + j - 1)]) /
             pair.b[static_cast<std::size_t>(n - j)];
      }
      bound = std::max(bound, -bc_rate(pair, m, n) / k);
    }
    double cp = static_cast<double>(1.0L + bound);
    if (p == 2 && approx_equal(pair.b[1] + pair.c[1], pair.b[2] + cp, kDefaultTolerances.check_rel,
                               kDefaultTolerances.check_abs)) {
      cp += 1.0;
    }
    pair.c[static_cast<std::size_t>(p)] = cp;
  }
  return pair;
}

RateTable construct_rate_hpalrmp(std::span<const double> g, int n_max) {
  return u_from_bc(construct_bc(g, n_max));
}

RateTable construct_rate_slrmp(std::span<const double> g, int n_max,
                               const std::function<double(int)>& phi) {
  require_positive_g(g, n_max);
  auto factor = [&](int m) {
    const double v = phi ? phi(m) : static_cast<double>(m);
    if (m >= 1 && !(v > 0.0)) throw DomainError("phi must be positive for m >= 1");
    return v;
  };
  return RateTable::from_function(n_max, [&](int m, int n) {
    return factor(m) * factor(n + 1) * g[static_cast<std::size_t>(n) + 1] /
           g[static_cast<std::size_t>(n)];
  });
}

Decomposition circular_decompose(const PairTable& f, double tol) {
  const std::size_t k = f.size();
  Decomposition out;
  for (const auto& row : f) {
    if (row.size() != k) throw DimensionMismatchError("pair table must be square");
    out.h.push_back(row.empty() ? std::nan("") : row[0]);
  }
  for (std::size_t n = 0; n < k; ++n) {
    for (std::size_t m = 0; m < k; ++m) {
      const double v = f[n][m];
      const double predicted = out.h[n] - out.h[m];
      if (std::isnan(v) || std::isnan(predicted)) continue;
      if (approx_equal(v, predicted, tol, tol)) continue;
      const double gap = std::abs(v - predicted);
      if (gap > out.residual) {
        out.residual = gap;
        out.witness = std::pair{static_cast<int>(n) + 1, static_cast<int>(m) + 1};
      }
    }
  }
  out.ok = !out.witness.has_value();
  return out;
}

PairTable hpalrmp_difference(const RateTable& u) {
  const int k = u.order();
  PairTable f(static_cast<std::size_t>(k),
              std::vector<double>(static_cast<std::size_t>(k), std::nan("")));
  for (int m = 1; m <= k; ++m) {
    for (int n = 1; m + n <= k; ++n) {
      const double denom = u(1, n - 1);
      if (denom == 0.0) continue;
      f[static_cast<std::size_t>(m) - 1][static_cast<std::size_t>(n) - 1] =
          u(m, n) - u(1, m) / denom * u(m + 1, n - 1);
    }
  }
  return f;
}

long double consistency_sum(const BCPair& pair, int n) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  if (static_cast<int>(pair.c.size()) < n + 1 || static_cast<int>(pair.b.size()) < n) {
    throw DimensionMismatchError("(b, c) pair too short for n");
  }
  auto B = [&](int i) { return static_cast<long double>(pair.b[static_cast<std::size_t>(i)]); };
  auto C = [&](int i) { return static_cast<long double>(pair.c[static_cast<std::size_t>(i)]); };
  long double prod = 1.0L;
  long double sum = 0.0L;
  for (int l = 0; l < n; ++l) {
    if (l > 0) prod *= B(l) / B(n - l);
    sum += (C(1 + l) - C(n - l)) * prod;
  }
  return sum;
}

}  // namespace lrmp
