#pragma once

#include <nlohmann/json.hpp>

#include "lrmp/distribution.hpp"
#include "lrmp/dynamics.hpp"
#include "lrmp/exact.hpp"
#include "lrmp/factorise.hpp"
#include "lrmp/montecarlo.hpp"
#include "lrmp/statespace.hpp"

// nlohmann::json adapters. Configurations are integer arrays, distributions
// {"L", "N", "pi"}, rate tables jagged arrays (row m holds n = 0..M-m;
// longer rows are accepted and truncated to the triangle).

namespace lrmp {

void to_json(nlohmann::json& j, const Configuration& eta);
void from_json(const nlohmann::json& j, Configuration& eta);

void to_json(nlohmann::json& j, const Distribution& d);
void from_json(const nlohmann::json& j, Distribution& d);

void to_json(nlohmann::json& j, const RateTable& u);
void from_json(const nlohmann::json& j, RateTable& u);

void to_json(nlohmann::json& j, const Witness& w);
void to_json(nlohmann::json& j, const CheckerReport& r);
void to_json(nlohmann::json& j, const OnePointTable& f);
void to_json(nlohmann::json& j, const EmpiricalMeasure& m);
void to_json(nlohmann::json& j, const BalanceReport& r);
void to_json(nlohmann::json& j, const ProductFit& f);

}  // namespace lrmp
