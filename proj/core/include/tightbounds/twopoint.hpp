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

#include "tightbounds/dispersion.hpp"
#include "tightbounds/numerics.hpp"

namespace tightbounds {

/// Distribution with mass w1 at v1 and w2 at v2, v1 < mu < v2.
struct TwoPoint {
  double v1 = 0.0;
  double w1 = 0.0;
  double v2 = 0.0;
  double w2 = 0.0;
};

struct FeasibilityResidual {
  double mean_residual = 0.0;
  double dispersion_residual = 0.0;
};

/// The mean-mu two-point distribution on {v1, v2}: w2 = (mu - v1) / (v2 - v1).
TwoPoint assemble_two_point(double mu, double v1, double v2);

/// Dispersion E[phi(X)] of the mean-mu two-point distribution on {v1, v2}.
/// Throws DomainError unless v1 < mu < v2.
double f_value(const DispersionSpec& spec, double v1, double v2);

struct SolvedTwoPoint {
  double v2 = 0.0;
  TwoPoint distribution;
  SolveReport report;
};

/// Unique v2 > mu with f_value(spec, v1, v2) == target, for v1 < mu.
///
/// Not defined on the MAD route, where phi grows only linearly; use
/// mad_family there.
SolvedTwoPoint solve_v2(const DispersionSpec& spec, double v1, const SolveConfig& cfg = {});

/// Closed-form mean-MAD two-point family, defined for v1 < mu - d/2.
TwoPoint mad_family(double mu, double d, double v1);

FeasibilityResidual residuals(const DispersionSpec& spec, const TwoPoint& tp);

}  // namespace tightbounds
