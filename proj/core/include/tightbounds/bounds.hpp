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

#include <variant>

#include "tightbounds/dispersion.hpp"
#include "tightbounds/numerics.hpp"
#include "tightbounds/twopoint.hpp"

namespace tightbounds {

/// Support points of a limiting (not attained) extremal distribution. Either
/// coordinate may be +/- infinity.
struct LimitingPair {
  double v1 = 0.0;
  double v2 = 0.0;
};

using Extremal = std::variant<TwoPoint, LimitingPair>;

enum class Regime {
  Interior,             // attained by a proper two-point distribution
  DegenerateUnbounded,  // supremum is +infinity
  DegenerateZero,       // infimum is 0
  Constant,             // every feasible distribution gives the same value
  Limiting,             // finite value approached as support points run off
};

const char* to_string(Regime regime);

struct BoundResult {
  double value = 0.0;
  Extremal extremal = TwoPoint{};
  Regime regime = Regime::Interior;
  SolveReport report;
};

/// Auto picks the closed form or specialised solver for the spec's route;
/// Generic forces the general root-finding path on phi (MAD: the closed-form
/// two-point family).
enum class Route { Auto, Generic };

/// sup E[X | X >= t] over the ambiguity set.
BoundResult cond_expectation_sup(const DispersionSpec& spec, double t, const SolveConfig& cfg = {},
                                 Route route = Route::Auto);

/// Power deviation specialisation: mu + a where a is the positive root of
/// (mu-t) a^p + ((mu-t)^p - s^p) a - (mu-t) s^p = 0. Requires t < mu, p > 1.
BoundResult cond_expectation_sup_power(double mu, double s, double p, double t,
                                       const SolveConfig& cfg = {});

/// sup E[psi(X) | X >= t] for a concave non-decreasing psi, i.e. psi(v2) at the
/// same extremal distribution as cond_expectation_sup. psi is checked for
/// monotonicity and concavity on a grid only.
BoundResult cond_expectation_sup_psi(const DispersionSpec& spec, double t,
                                     const ScalarFunction& psi, const SolveConfig& cfg = {});

/// inf P(X >= t) over the ambiguity set.
BoundResult tail_inf(const DispersionSpec& spec, double t, const SolveConfig& cfg = {},
                     Route route = Route::Auto);

/// sup E[max(X - t, 0)] over the ambiguity set.
BoundResult max_operator_sup(const DispersionSpec& spec, double t, const SolveConfig& cfg = {},
                             Route route = Route::Auto);

/// Power deviation specialisation of max_operator_sup, p > 1, solved in the
/// deviations a = mu - v1, b = v2 - mu.
BoundResult max_operator_sup_power(double mu, double s, double p, double t,
                                   const SolveConfig& cfg = {});

BoundResult max_operator_sup_mad(double mu, double d, double t);

/// Derivative dv2/dt of the cond-exp support point v2(t) for t < mu (MAD:
/// t < mu - d/2). Used by the pricing candidate search.
double cond_expectation_slope(const DispersionSpec& spec, double t, double v2);

}  // namespace tightbounds
