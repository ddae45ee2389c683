#include "lrmp/json_io.hpp"

#include "lrmp/errors.hpp"

namespace lrmp {

using nlohmann::json;

void to_json(json& j, const Configuration& eta) { j = eta.vector(); }

void from_json(const json& j, Configuration& eta) {
  if (!j.is_array()) throw InvalidInput("configuration must be a JSON array");
  eta = Configuration(j.get<std::vector<int>>());
}

void to_json(json& j, const Distribution& d) {
  j = json{{"L", d.sites}, {"N", d.particles}, {"pi", d.probs}};
}

void from_json(const json& j, Distribution& d) {
  d.sites = j.at("L").get<std::size_t>();
  d.particles = j.at("N").get<int>();
  d.probs = j.at("pi").get<std::vector<double>>();
  if (!d.matches(StateSpace(d.sites, d.particles))) {
    throw DimensionMismatchError("pi length does not match L and N");
  }
}

void to_json(json& j, const RateTable& u) { j = u.rows(); }

void from_json(const json& j, RateTable& u) {
  if (!j.is_array()) throw InvalidInput("rate table must be a JSON array of rows");
  u = RateTable::from_rows(j.get<std::vector<std::vector<double>>>());
}

void to_json(json& j, const Witness& w) {
  j = json{{"condition", w.condition}, {"index", w.index}, {"lhs", w.lhs}, {"rhs", w.rhs},
           {"residual", w.residual}};
}

void to_json(json& j, const CheckerReport& r) {
  j = json{{"variant", r.variant},
           {"verdict", r.pass ? "pass" : "fail"},
           {"max_load", r.max_load},
           {"violations", r.violations},
           {"witnesses", r.witnesses}};
  if (const auto* phi = std::get_if<Phi>(&r.extracted)) {
    j["extracted"] = json{{"phi", phi->phi}};
  } else if (const auto* bc = std::get_if<BCPair>(&r.extracted)) {
    j["extracted"] = json{{"b", bc->b}, {"c", bc->c}};
  } else if (const auto* w = std::get_if<SlrmpRatios>(&r.extracted)) {
    j["extracted"] = json{{"w", w->w}};
  } else {
    j["extracted"] = nullptr;
  }
}

void to_json(json& j, const OnePointTable& f) {
  json rows = json::array();
  for (const auto& row : f.log_f) {
    std::vector<double> values;
    for (double v : row) values.push_back(std::exp(v));
    rows.push_back(values);
  }
  j = json{{"site_dependent", f.site_dependent}, {"x", f.x_values}, {"f", rows},
           {"log_f", f.log_f}};
}

void to_json(json& j, const EmpiricalMeasure& m) {
  j = json{{"L", m.sites}, {"N", m.particles}, {"pi", m.freq}, {"total_time", m.total_time},
           {"events", m.events}};
}

void to_json(json& j, const BalanceReport& r) {
  j = json{{"holds", r.holds}, {"worst", r.worst}, {"checked", r.checked}};
  if (r.witness) j["witness"] = *r.witness;
  if (r.partner) j["partner"] = *r.partner;
  if (r.site) j["site"] = *r.site + 1;
}

void to_json(json& j, const ProductFit& f) {
  j = json{{"verdict", f.product ? "product" : "not-product"},
           {"max_residual", f.max_residual},
           {"log_g", f.log_g},
           {"log_z", f.log_z}};
}

}  // namespace lrmp
