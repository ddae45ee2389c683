#include "lrmp_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include "lrmp/errors.hpp"
#include "lrmp/exact.hpp"
#include "lrmp/factorise.hpp"
#include "lrmp/had.hpp"
#include "lrmp/json_io.hpp"
#include "lrmp/montecarlo.hpp"
#include "lrmp_cli/expression.hpp"

namespace lrmp::cli {

namespace {

using nlohmann::json;

struct Options {
  std::size_t sites = 1;
  int particles = 0;
  std::string x;
  double q = 0.0;
  std::string builtin;
  std::string rates;
  std::string variant;
  std::string g;
  int n_max = -1;
  double events = 0.0;
  double time = 0.0;
  std::uint64_t seed = 0;
  std::string initial;
  std::string out;
  std::string generator_csv;
  std::string marginals_csv;
  std::string sweep;
  std::string sweep_csv;
  std::vector<std::string> tol;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidInput("bad number '" + item + "' in list");
    }
    if (used != item.size()) throw InvalidInput("bad number '" + item + "' in list");
    v.push_back(value);
  }
  return v;
}

Tolerances parse_tolerances(const std::vector<std::string>& items) {
  Tolerances tol;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("--tol expects key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const double value = parse_list(item.substr(eq + 1)).at(0);
    if (!(value > 0.0)) throw InvalidInput("tolerances must be positive");
    if (key == "residual") tol.residual = value;
    else if (key == "product_fit") tol.product_fit = value;
    else if (key == "normalization") tol.normalization = value;
    else if (key == "check_rel") tol.check_rel = value;
    else if (key == "check_abs") tol.check_abs = value;
    else if (key == "decompose") tol.decompose = value;
    else throw InvalidInput("unknown tolerance '" + key + "'");
  }
  return tol;
}

json tolerances_json(const Tolerances& t) {
  return json{{"residual", t.residual},       {"product_fit", t.product_fit},
              {"normalization", t.normalization}, {"check_rel", t.check_rel},
              {"check_abs", t.check_abs},     {"decompose", t.decompose}};
}

std::size_t capacity_from_env() {
  const char* env = std::getenv("LRMP_CAPACITY");
  if (env == nullptr || *env == '\0') return kDefaultCapacity;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw InvalidInput("LRMP_CAPACITY must be a positive integer");
  return static_cast<std::size_t>(v);
}

json load_json(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\n");
  if (first != std::string::npos && (source[first] == '[' || source[first] == '{')) {
    return json::parse(source);
  }
  std::ifstream in(source);
  if (!in) throw InvalidInput("cannot open '" + source + "'");
  return json::parse(in);
}

// Splits "phi,psi" at the comma that is not inside parentheses.
std::pair<std::string, std::string> split_pair(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
  }
  throw InvalidInput("product builtin expects product:<phi(m)>,<psi(n)>");
}

RateTable builtin_table(const std::string& name, int order) {
  if (name == "had") return had_rates(order);
  if (name == "constant") return RateTable::from_function(order, [](int, int) { return 1.0; });
  if (name.rfind("product:", 0) == 0) {
    const auto [phi_text, psi_text] = split_pair(name.substr(8));
    const Expression phi(phi_text, 'm');
    const Expression psi(psi_text, 'n');
    return RateTable::from_function(order, [&](int m, int n) { return phi(m) * psi(n); });
  }
  throw InvalidInput("unknown builtin '" + name + "'");
}

RateTable rate_table(const Options& o, int order) {
  if (!o.builtin.empty() && !o.rates.empty()) {
    throw InvalidInput("give either --builtin or --rates, not both");
  }
  if (!o.rates.empty()) {
    json j = load_json(o.rates);
    if (j.is_object()) j = j.at("rates");
    RateTable u = j.get<RateTable>();
    if (u.order() < order) {
      throw DimensionMismatchError("rate table order " + std::to_string(u.order()) +
                                   " is below " + std::to_string(order));
    }
    return u;
  }
  return builtin_table(o.builtin.empty() ? "had" : o.builtin, order);
}

std::vector<double> site_params(const Options& o) {
  if (o.x.empty()) return unit_params(o.sites);
  std::vector<double> x = parse_list(o.x);
  if (x.size() != o.sites) {
    throw DimensionMismatchError("-x has " + std::to_string(x.size()) + " entries for L = " +
                                 std::to_string(o.sites));
  }
  return x;
}

std::vector<double> g_values(const Options& o, int& n_max) {
  const std::string& src = o.g.empty() ? std::string("ones") : o.g;
  std::vector<double> g;
  if (src == "ones" || src == "inv-factorial") {
    if (n_max < 0) n_max = 6;
    double v = 1.0;
    for (int n = 0; n <= n_max + 1; ++n) {
      if (src == "inv-factorial" && n > 0) v /= n;
      g.push_back(v);
    }
  } else {
    g = load_json(src).get<std::vector<double>>();
    if (g.size() < 3) throw InvalidInput("g needs at least three entries");
    if (n_max < 0) n_max = static_cast<int>(g.size()) - 2;
    if (static_cast<int>(g.size()) < n_max + 2) throw InvalidInput("g shorter than n_max + 2");
  }
  for (double v : g) {
    if (!std::isfinite(v) || v <= 0.0) throw InvalidInput("g entries must be positive");
  }
  return g;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write '" + path + "'");
  f << text;
}

class Runner {
 public:
  Runner(std::string subcommand, const Options& o, std::ostream& out)
      : sub_(std::move(subcommand)), o_(o), out_(out), tol_(parse_tolerances(o.tol)),
        capacity_(capacity_from_env()) {}

  const Tolerances& tol() const { return tol_; }
  std::size_t capacity() const { return capacity_; }
  void param(const std::string& key, json value) { params_[key] = std::move(value); }
  void input(const std::string& path) { inputs_.push_back(path); }
  void output(const std::string& path) { outputs_.push_back(path); }

  void emit(const json& result) {
    json manifest{{"subcommand", sub_},
                  {"parameters", params_},
                  {"inputs", inputs_},
                  {"seed", o_.seed},
                  {"tolerances", tolerances_json(tol_)},
                  {"capacity", capacity_},
                  {"version", LRMP_VERSION}};
    if (o_.out.empty()) {
      manifest["outputs"] = outputs_;
      out_ << json{{"result", result}, {"manifest", manifest}}.dump(2) << '\n';
      return;
    }
    outputs_.push_back(o_.out);
    manifest["outputs"] = outputs_;
    write_file(o_.out, result.dump(2) + "\n");
    write_file(o_.out + ".manifest.json", manifest.dump(2) + "\n");
  }

 private:
  std::string sub_;
  const Options& o_;
  std::ostream& out_;
  Tolerances tol_;
  std::size_t capacity_;
  json params_ = json::object();
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
};

void record_system(Runner& r, const Options& o, const std::vector<double>& x) {
  r.param("L", o.sites);
  r.param("N", o.particles);
  r.param("x", x);
  r.param("q", o.q);
  if (!o.rates.empty()) r.input(o.rates);
  else r.param("builtin", o.builtin.empty() ? "had" : o.builtin);
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  Runner r("enumerate", o, out);
  r.param("L", o.sites);
  r.param("N", o.particles);
  const StateSpace space(o.sites, o.particles);
  if (space.size() > r.capacity()) throw CapacityError("state space exceeds capacity");
  r.emit(json{{"L", o.sites}, {"N", o.particles}, {"size", space.size()},
              {"configurations", space.configurations()}});
  return kOk;
}

int cmd_solve(const Options& o, std::ostream& out) {
  Runner r("solve", o, out);
  const std::vector<double> x = site_params(o);
  record_system(r, o, x);
  const RateSpec spec(rate_table(o, o.particles), o.q, x);
  const StateSpace space(o.sites, o.particles);
  if (space.size() > r.capacity()) throw CapacityError("state space exceeds capacity");
  const Generator gen = build_generator(space, spec);
  if (!o.generator_csv.empty()) {
    std::ofstream f(o.generator_csv);
    if (!f) throw InvalidInput("cannot write '" + o.generator_csv + "'");
    write_generator_csv(f, gen);
    r.output(o.generator_csv);
  }
  const Distribution pi = stationary(gen, r.capacity(), r.tol());
  json result = pi;
  result["residual"] = balance_residual(pi, gen);
  r.emit(result);
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  Runner r("check", o, out);
  const int order = o.n_max < 0 ? 6 : o.n_max;
  const RateTable u = rate_table(o, o.rates.empty() ? order : 0);
  const std::string variant = o.variant.empty() ? "all" : o.variant;
  r.param("variant", variant);
  r.param("order", u.order());
  if (!o.rates.empty()) r.input(o.rates);
  else r.param("builtin", o.builtin.empty() ? "had" : o.builtin);
  CheckOptions opts;
  opts.tol = r.tol();
  json reports = json::object();
  bool pass = true;
  auto run_one = [&](const std::string& name) {
    CheckerReport rep;
    if (name == "palrmp") rep = check_palrmp(u, opts);
    else if (name == "hpalrmp") rep = check_hpalrmp(u, opts);
    else if (name == "hpalrmp-alt") rep = check_hpalrmp_alt(u, opts);
    else if (name == "slrmp") rep = check_slrmp(u, opts);
    else throw InvalidInput("unknown variant '" + name + "'");
    pass = pass && rep.pass;
    reports[name] = rep;
  };
  if (variant == "all") {
    for (const char* name : {"palrmp", "hpalrmp", "hpalrmp-alt", "slrmp"}) run_one(name);
    r.emit(reports);
  } else {
    run_one(variant);
    r.emit(reports[variant]);
  }
  return pass ? kOk : kCheckFailed;
}

int cmd_construct(const Options& o, std::ostream& out) {
  Runner r("construct", o, out);
  int n_max = o.n_max;
  const std::vector<double> g = g_values(o, n_max);
  const std::string variant = o.variant.empty() ? "palrmp" : o.variant;
  r.param("g", o.g.empty() ? "ones" : o.g);
  r.param("variant", variant);
  r.param("n_max", n_max);
  RateTable u;
  Variant target = Variant::Palrmp;
  if (variant == "palrmp") {
    u = construct_rate_palrmp(g, n_max);
  } else if (variant == "hpalrmp") {
    u = construct_rate_hpalrmp(g, n_max);
    target = Variant::Hpalrmp;
  } else if (variant == "slrmp") {
    u = construct_rate_slrmp(g, n_max);
    target = Variant::Hslrmp;
  } else {
    throw InvalidInput("unknown variant '" + variant + "'");
  }
  // The one-point function the rates were built to realise: g(n)/g(0).
  OnePointTable f;
  f.site_dependent = target == Variant::Palrmp;
  f.x_values = f.site_dependent ? std::vector<double>{1.0} : std::vector<double>{};
  std::vector<double> row;
  for (int n = 0; n <= n_max; ++n) row.push_back(std::log(g[static_cast<std::size_t>(n)] / g[0]));
  f.log_f.push_back(row);
  r.emit(json{{"variant", variant}, {"rates", u}, {"one_point", f}});
  return kOk;
}

int cmd_had(const Options& o, std::ostream& out) {
  Runner r("had", o, out);
  const std::vector<double> x = site_params(o);
  r.param("L", o.sites);
  r.param("N", o.particles);
  r.param("x", x);
  const HadSystem sys(o.sites, o.particles, x);
  const StateSpace space(o.sites, o.particles);
  if (space.size() > r.capacity()) throw CapacityError("state space exceeds capacity");
  json marginals = json::array();
  for (std::size_t l = 0; l < o.sites; ++l) marginals.push_back(site_marginal(sys, l));
  json result{{"marginal", marginals}};
  if (o.sites >= 2) {
    const StateSpace bigger(o.sites, o.particles + 1);
    if (bigger.size() > r.capacity()) throw CapacityError("state space exceeds capacity");
    result["current"] = edge_current_formula(sys);
    const BijectionReport b = edge_transition_bijection(sys);
    result["bijection_ok"] = b.ok;
    result["bijection"] = json{{"transitions", b.transitions}, {"images", b.images},
                               {"eligible", b.eligible}, {"worst_current_gap", b.worst_current_gap}};
  } else {
    result["current"] = nullptr;
    result["bijection_ok"] = nullptr;
  }
  if (!o.marginals_csv.empty()) {
    std::ofstream f(o.marginals_csv);
    if (!f) throw InvalidInput("cannot write '" + o.marginals_csv + "'");
    f.precision(17);
    f << "site,m,probability\n";
    for (std::size_t l = 0; l < o.sites; ++l) {
      const auto pmf = site_marginal(sys, l);
      for (std::size_t m = 0; m < pmf.size(); ++m) f << l + 1 << ',' << m << ',' << pmf[m] << '\n';
    }
    r.output(o.marginals_csv);
  }
  if (!o.sweep.empty()) {
    const auto dots = o.sweep.find("..");
    if (dots == std::string::npos) throw InvalidInput("--sweep expects lo..hi");
    const int lo = std::stoi(o.sweep.substr(0, dots));
    const int hi = std::stoi(o.sweep.substr(dots + 2));
    const MonotonicityTable t = current_monotonicity(x, lo, hi);
    result["sweep"] = json{{"N", t.n}, {"current", t.current},
                           {"strictly_decreasing", t.strictly_decreasing}};
    r.param("sweep", o.sweep);
    if (!o.sweep_csv.empty()) {
      std::ofstream f(o.sweep_csv);
      if (!f) throw InvalidInput("cannot write '" + o.sweep_csv + "'");
      f.precision(17);
      f << "N,current\n";
      for (std::size_t i = 0; i < t.n.size(); ++i) f << t.n[i] << ',' << t.current[i] << '\n';
      r.output(o.sweep_csv);
    }
  }
  r.emit(result);
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  Runner r("simulate", o, out);
  const std::vector<double> x = site_params(o);
  record_system(r, o, x);
  SimConfig cfg;
  cfg.spec = RateSpec(rate_table(o, o.particles), o.q, x);
  if (o.initial.empty()) {
    std::vector<int> occ(o.sites, 0);
    occ[0] = o.particles;
    cfg.initial = Configuration(occ);
  } else {
    cfg.initial = load_json(o.initial).get<Configuration>();
    if (cfg.initial.total() != o.particles) throw InvalidInput("initial configuration total != N");
  }
  if (o.events > 0.0) cfg.max_events = static_cast<std::uint64_t>(std::llround(o.events));
  if (o.time > 0.0) cfg.max_time = o.time;
  if (!cfg.max_events && !cfg.max_time) cfg.max_events = 1000000;
  cfg.seed = o.seed;
  r.param("events", cfg.max_events ? json(*cfg.max_events) : json(nullptr));
  r.param("time", cfg.max_time ? json(*cfg.max_time) : json(nullptr));
  r.param("initial", cfg.initial);
  const StateSpace space(o.sites, o.particles);
  if (space.size() > r.capacity()) throw CapacityError("state space exceeds capacity");
  const EmpiricalMeasure m = simulate(cfg);
  json result = m;
  const Distribution pi = stationary(build_generator(space, cfg.spec), r.capacity(), r.tol());
  result["tv_exact"] = tv_distance(m, pi);
  r.emit(result);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Long-range misanthrope processes on a ring: exact solves, checks, simulation",
               "lrmp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LRMP_VERSION);
  Options o;

  auto system = [&](CLI::App* sub, bool rates) {
    sub->add_option("-L", o.sites, "number of sites")->check(CLI::PositiveNumber);
    sub->add_option("-N", o.particles, "number of particles")->check(CLI::NonNegativeNumber);
    sub->add_option("-x", o.x, "site parameters, comma separated");
    sub->add_option("--out", o.out, "write the result here (manifest alongside)");
    sub->add_option("--tol", o.tol, "tolerance override key=value");
    if (rates) {
      sub->add_option("-q", o.q, "left-hop asymmetry")->check(CLI::NonNegativeNumber);
      sub->add_option("--builtin", o.builtin, "had | constant | product:<phi(m)>,<psi(n)>");
      sub->add_option("--rates", o.rates, "rate table JSON (file or inline)");
    }
  };

  CLI::App* enumerate_cmd = app.add_subcommand("enumerate", "list the state space");
  system(enumerate_cmd, false);

  CLI::App* solve_cmd = app.add_subcommand("solve", "exact stationary distribution");
  system(solve_cmd, true);
  solve_cmd->add_option("--generator-csv", o.generator_csv, "also write the generator");

  CLI::App* check_cmd = app.add_subcommand("check", "test factorisation conditions");
  check_cmd->add_option("--builtin", o.builtin, "had | constant | product:<phi(m)>,<psi(n)>");
  check_cmd->add_option("--rates", o.rates, "rate table JSON (file or inline)");
  check_cmd->add_option("--variant", o.variant, "palrmp | hpalrmp | hpalrmp-alt | slrmp | all");
  check_cmd->add_option("--nmax", o.n_max, "order of builtin tables (default 6)");
  check_cmd->add_option("--out", o.out, "write the result here (manifest alongside)");
  check_cmd->add_option("--tol", o.tol, "tolerance override key=value");

  CLI::App* construct_cmd = app.add_subcommand("construct", "build rates for a target weight");
  construct_cmd->add_option("--g", o.g, "ones | inv-factorial | JSON array");
  construct_cmd->add_option("--variant", o.variant, "palrmp | hpalrmp | slrmp");
  construct_cmd->add_option("--nmax", o.n_max, "table order (default len(g) - 2, or 6)");
  construct_cmd->add_option("--out", o.out, "write the result here (manifest alongside)");

  CLI::App* had_cmd = app.add_subcommand("had", "discrete HAD report");
  system(had_cmd, false);
  had_cmd->add_option("--marginals-csv", o.marginals_csv, "write site marginals as CSV");
  had_cmd->add_option("--sweep", o.sweep, "current for N in lo..hi");
  had_cmd->add_option("--sweep-csv", o.sweep_csv, "write the sweep as CSV");

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "kinetic Monte Carlo");
  system(simulate_cmd, true);
  simulate_cmd->add_option("--events", o.events, "jump budget (default 1e6)");
  simulate_cmd->add_option("--time", o.time, "simulated-time budget");
  simulate_cmd->add_option("--seed", o.seed, "PRNG seed");
  simulate_cmd->add_option("--initial", o.initial, "initial configuration JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*enumerate_cmd) return cmd_enumerate(o, out);
    if (*solve_cmd) return cmd_solve(o, out);
    if (*check_cmd) return cmd_check(o, out);
    if (*construct_cmd) return cmd_construct(o, out);
    if (*had_cmd) return cmd_had(o, out);
    if (*simulate_cmd) return cmd_simulate(o, out);
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kStructuralError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace lrmp::cli
