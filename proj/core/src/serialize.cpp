// Copyright 2026 The tightbounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tightbounds/serialize.hpp"

#include <cmath>
#include <limits>

namespace tightbounds {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(std::string("JSON object is missing \"") + key + "\"");
  }
  return j.at(key);
}

double number_field(const Json& j, const char* key) { return number_from_json(field(j, key)); }

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw DomainError(std::string("JSON field \"") + key + "\" is not a string");
  return v.get<std::string>();
}

}  // namespace

Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw DomainError("expected a number, \"inf\", \"-inf\" or \"nan\" in JSON, got " + j.dump());
}

Json to_json(const DispersionSpec& spec) {
  if (spec.kind() == DispersionKind::Custom) {
    throw DomainError("custom dispersion specs cannot be serialized");
  }
  Json j;
  j["mu"] = spec.mu();
  j["kind"] = to_string(spec.kind());
  j["p"] = spec.p();
  j["level"] = spec.level();
  return j;
}

DispersionSpec spec_from_json(const Json& j) {
  const std::string kind = string_field(j, "kind");
  const double mu = number_field(j, "mu");
  const double level = number_field(j, "level");
  if (kind == "power") return DispersionSpec::power(mu, number_field(j, "p"), level);
  if (kind == "variance") return DispersionSpec::variance(mu, level);
  if (kind == "mad") return DispersionSpec::mad(mu, level);
  throw DomainError("unknown dispersion kind \"" + kind + "\"");
}

Json to_json(const TwoPoint& tp) {
  Json j;
  j["v1"] = number_to_json(tp.v1);
  j["w1"] = number_to_json(tp.w1);
  j["v2"] = number_to_json(tp.v2);
  j["w2"] = number_to_json(tp.w2);
  return j;
}

TwoPoint two_point_from_json(const Json& j) {
  TwoPoint tp;
  tp.v1 = number_field(j, "v1");
  tp.w1 = number_field(j, "w1");
  tp.v2 = number_field(j, "v2");
  tp.w2 = number_field(j, "w2");
  return tp;
}

Json to_json(const SolveReport& report) {
  Json j;
  j["root_or_min"] = number_to_json(report.root_or_min);
  j["residual"] = number_to_json(report.residual);
  j["iterations"] = report.iterations;
  j["converged"] = report.converged;
  return j;
}

SolveReport report_from_json(const Json& j) {
  SolveReport r;
  r.root_or_min = number_field(j, "root_or_min");
  r.residual = number_field(j, "residual");
  const Json& it = field(j, "iterations");
  const Json& conv = field(j, "converged");
  if (!it.is_number_integer() || !conv.is_boolean()) {
    throw DomainError("malformed solve report in JSON");
  }
  r.iterations = it.get<int>();
  r.converged = conv.get<bool>();
  return r;
}

Json to_json(const Extremal& extremal) {
  if (const auto* tp = std::get_if<TwoPoint>(&extremal)) {
    Json j;
    j["type"] = "two_point";
    const Json fields = to_json(*tp);
    for (const auto& [k, v] : fields.items()) j[k] = v;
    return j;
  }
  const auto& lp = std::get<LimitingPair>(extremal);
  Json j;
  j["type"] = "limiting";
  j["v1"] = number_to_json(lp.v1);
  j["v2"] = number_to_json(lp.v2);
  return j;
}

Extremal extremal_from_json(const Json& j) {
  const std::string type = string_field(j, "type");
  if (type == "two_point") return two_point_from_json(j);
  if (type == "limiting") return LimitingPair{number_field(j, "v1"), number_field(j, "v2")};
  throw DomainError("unknown extremal type \"" + type + "\"");
}

Regime regime_from_string(const std::string& name) {
  for (Regime r : {Regime::Interior, Regime::DegenerateUnbounded, Regime::DegenerateZero,
                   Regime::Constant, Regime::Limiting}) {
    if (name == to_string(r)) return r;
  }
  throw DomainError("unknown regime \"" + name + "\"");
}

Json to_json(const BoundResult& result) {
  Json j;
  j["value"] = number_to_json(result.value);
  j["regime"] = to_string(result.regime);
  j["extremal"] = to_json(result.extremal);
  j["report"] = to_json(result.report);
  return j;
}

BoundResult bound_result_from_json(const Json& j) {
  BoundResult r;
  r.value = number_field(j, "value");
  r.regime = regime_from_string(string_field(j, "regime"));
  r.extremal = extremal_from_json(field(j, "extremal"));
  r.report = report_from_json(field(j, "report"));
  return r;
}

Json to_json(const NewsvendorSolution& sol) {
  Json j;
  j["q_star"] = number_to_json(sol.q_star);
  j["cost"] = number_to_json(sol.cost);
  j["cost_centered"] = number_to_json(sol.cost_centered);
  if (sol.cost_mu_plus_sigma_sqrt_bh) {
    j["cost_mu_plus_sigma_sqrt_bh"] = number_to_json(*sol.cost_mu_plus_sigma_sqrt_bh);
  }
  j["extremal_demand"] = to_json(sol.extremal_demand);
  j["report"] = to_json(sol.report);
  return j;
}

Json to_json(const PricingSolution& sol) {
  Json j;
  j["rho_star"] = number_to_json(sol.rho_star);
  j["ratio"] = number_to_json(sol.ratio);
  j["rho1"] = sol.rho1 ? number_to_json(*sol.rho1) : Json(nullptr);
  j["rho2"] = number_to_json(sol.rho2);
  j["regime"] = to_string(sol.regime);
  return j;
}

Json to_json(const oracle::DiscreteDistribution& dist) {
  Json j;
  Json support = Json::array();
  Json weights = Json::array();
  for (double x : dist.support) support.push_back(number_to_json(x));
  for (double w : dist.weights) weights.push_back(number_to_json(w));
  j["support"] = support;
  j["weights"] = weights;
  return j;
}

Json to_json(const oracle::OracleReport& report) {
  Json j;
  j["best_objective"] = number_to_json(report.best_objective);
  j["best_distribution"] = to_json(report.best_distribution);
  j["reference"] = number_to_json(report.reference);
  j["samples_evaluated"] = report.samples_evaluated;
  j["samples_singular"] = report.samples_singular;
  j["samples_infeasible"] = report.samples_infeasible;
  j["samples_undefined"] = report.samples_undefined;
  j["violation_count"] = report.violation_count;
  Json violations = Json::array();
  for (const auto& v : report.bound_violations) {
    Json e;
    e["objective"] = number_to_json(v.objective);
    e["distribution"] = to_json(v.distribution);
    violations.push_back(e);
  }
  j["bound_violations"] = violations;
  return j;
}

}  // namespace tightbounds
