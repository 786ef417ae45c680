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

#pragma once

#include <nlohmann/json.hpp>

#include "tightbounds/bounds.hpp"
#include "tightbounds/newsvendor.hpp"
#include "tightbounds/oracle.hpp"
#include "tightbounds/pricing.hpp"

namespace tightbounds {

/// Key order is insertion order so that emitted documents are stable.
using Json = nlohmann::ordered_json;

/// Non-finite numbers are written as the strings "inf", "-inf" and "nan".
Json number_to_json(double x);
double number_from_json(const Json& j);

/// {"mu", "kind": "power"|"variance"|"mad", "p", "level"}. Custom specs throw
/// DomainError. Parsing throws DomainError on missing or mistyped fields.
Json to_json(const DispersionSpec& spec);
DispersionSpec spec_from_json(const Json& j);

Json to_json(const TwoPoint& tp);
TwoPoint two_point_from_json(const Json& j);

Json to_json(const SolveReport& report);
SolveReport report_from_json(const Json& j);

Json to_json(const Extremal& extremal);
Extremal extremal_from_json(const Json& j);

Json to_json(const BoundResult& result);
BoundResult bound_result_from_json(const Json& j);

Regime regime_from_string(const std::string& name);

Json to_json(const NewsvendorSolution& sol);
Json to_json(const PricingSolution& sol);
Json to_json(const oracle::DiscreteDistribution& dist);
Json to_json(const oracle::OracleReport& report);

}  // namespace tightbounds
