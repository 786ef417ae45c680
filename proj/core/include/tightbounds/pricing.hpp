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

#include <optional>

#include "tightbounds/bounds.hpp"

namespace tightbounds {

/// Robust posted-price problem in scale-free units: valuations have mean 1 and
/// prices are reported as rho = r / mu.
class PricingProblem {
 public:
  /// Mean-MAD set with delta = d / mu, 0 < delta < 2.
  static PricingProblem mad(double delta);
  /// Power deviation set with delta = s / mu; p == 1 is MAD, p == 2 variance.
  static PricingProblem power(double p, double delta);
  /// Mean-variance set with delta = sigma / mu.
  static PricingProblem variance(double delta);
  /// Rescales any non-custom spec with mu > 0 to unit mean.
  static PricingProblem from_spec(const DispersionSpec& spec);

  const DispersionSpec& spec() const { return spec_; }
  double delta() const { return spec_.level(); }
  /// Prices at or above this give an unbounded ratio (1 - delta/2 for MAD).
  double rho_max() const;

 private:
  explicit PricingProblem(DispersionSpec spec);
  DispersionSpec spec_;
};

enum class PricingRegime { Intersection, Minimizer, Tie };

const char* to_string(PricingRegime regime);

struct PricingSolution {
  double rho_star = 0.0;
  double ratio = 0.0;
  /// Price where 1/w2 = v2/rho; absent when the curves do not meet in the
  /// price domain (MAD with delta >= 1).
  std::optional<double> rho1;
  double rho2 = 0.0;  // minimiser of v2(rho)/rho
  PricingRegime regime = PricingRegime::Intersection;
};

/// max{1/w2, v2/rho} with v2 the conditional-expectation support point at
/// t = rho. +infinity where v2 is unbounded. Requires 0 < rho < 1.
double worst_case_ratio(const PricingProblem& prob, double rho, const SolveConfig& cfg = {},
                        Route route = Route::Auto);

/// The two candidate prices, computed numerically.
std::optional<double> intersection_price(const PricingProblem& prob, const SolveConfig& cfg = {},
                                         Route route = Route::Auto);
double minimizer_price(const PricingProblem& prob, const SolveConfig& cfg = {},
                       Route route = Route::Auto);

/// Auto uses the mean-MAD closed forms; everything else, and any spec under
/// Route::Generic, compares the numeric candidates.
PricingSolution solve(const PricingProblem& prob, const SolveConfig& cfg = {},
                      Route route = Route::Auto);

/// The delta at which rho1 and rho2 cross for the power-deviation-p set,
/// 1 <= p <= 2. Scans delta on a log grid over (1e-4, 10) and bisects the first
/// sign change of rho1 - rho2. Throws NoTransition if there is none.
double transition_delta(double p, const SolveConfig& cfg = {});

}  // namespace tightbounds
