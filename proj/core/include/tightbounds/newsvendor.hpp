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
#include <vector>

#include "tightbounds/bounds.hpp"

namespace tightbounds {

struct NewsvendorProblem {
  DispersionSpec spec;  // demand ambiguity set
  double b = 1.0;       // underage penalty per unit
  double h = 1.0;       // holding penalty per unit

  /// Throws DomainError unless b > 0 and h > 0.
  void validate() const;
};

struct NewsvendorSolution {
  double q_star = 0.0;
  /// J(q*) = h q* + (b+h) sup E[max(D - q*, 0)].
  double cost = 0.0;
  /// J(q*) - h mu, i.e. h (q* - E D) + (b+h) sup E[max(D - q*, 0)].
  double cost_centered = 0.0;
  /// Variance only: mu + sigma sqrt(b h), the cost with the h factor on mu
  /// dropped. Reported for comparison with sources that quote it.
  std::optional<double> cost_mu_plus_sigma_sqrt_bh;
  Extremal extremal_demand = TwoPoint{};
  SolveReport report;
};

/// J(q) = h q + (b+h) max_operator_sup(spec, q).
double worst_case_cost(const NewsvendorProblem& prob, double q, const SolveConfig& cfg = {},
                       Route route = Route::Auto);

/// Variance: Scarf's closed form. MAD: q* = mu. Otherwise, and for any spec
/// under Route::Generic, a golden-section search on J over [mu - Q, mu + Q],
/// Q = 20 level max(sqrt(b/h), sqrt(h/b)), polished on the first-order
/// condition h = (b+h) P(D > q) at the extremal demand.
NewsvendorSolution solve(const NewsvendorProblem& prob, const SolveConfig& cfg = {},
                         Route route = Route::Auto);

struct NewsvendorSweepPoint {
  double p = 0.0;
  double q_star = 0.0;
  double cost = 0.0;
};

struct PbarResult {
  std::vector<NewsvendorSweepPoint> points;  // one per grid value, in grid order
  double p_bar = 0.0;                        // argmax of q*(p)
  double q_star_at_p_bar = 0.0;
  bool interior = false;  // false when the maximum sits on an end of the grid
};

/// Solves the power-deviation newsvendor for each p in the grid (p > 1) and
/// refines the argmax of q*(p) by golden-section search, tolerance 1e-3 in p,
/// over the grid cells next to the best grid point.
PbarResult sweep_pbar(double mu, double s, double b, double h, const std::vector<double>& p_grid,
                      const SolveConfig& cfg = {});

}  // namespace tightbounds
