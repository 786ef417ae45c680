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

#include "tightbounds/twopoint.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tightbounds {

TwoPoint assemble_two_point(double mu, double v1, double v2) {
  TwoPoint tp;
  tp.v1 = v1;
  tp.v2 = v2;
  tp.w2 = (mu - v1) / (v2 - v1);
  tp.w1 = (v2 - mu) / (v2 - v1);
  return tp;
}

double f_value(const DispersionSpec& spec, double v1, double v2) {
  const double mu = spec.mu();
  if (!(v1 < mu && mu < v2)) {
    std::ostringstream os;
    os << "f_value needs v1 < mu < v2, got v1 = " << v1 << ", mu = " << mu << ", v2 = " << v2;
    throw DomainError(os.str());
  }
  const double width = v2 - v1;
  return ((v2 - mu) * spec.phi(v1) + (mu - v1) * spec.phi(v2)) / width;
}

SolvedTwoPoint solve_v2(const DispersionSpec& spec, double v1, const SolveConfig& cfg) {
  const double mu = spec.mu();
  if (spec.is_mad()) throw DomainError("solve_v2 is not defined for MAD; use mad_family");
  if (!(v1 < mu)) throw DomainError("solve_v2 needs v1 < mu");

  // Solve in the offset x = v2 - mu so tolerances are relative to the
  // deviation, not to |mu|.
  const double target = spec.target();
  const ScalarFunction g = [&](double x) { return f_value(spec, v1, mu + x) - target; };
  const double eps = 1e-12 * std::max(1.0, std::abs(mu));
  const auto [lo, hi] = bracket_upward(g, eps, spec.scale(), cfg);
  const SolveReport rep = find_root(g, lo, hi, cfg);

  SolvedTwoPoint out;
  out.v2 = mu + rep.root_or_min;
  out.distribution = assemble_two_point(mu, v1, out.v2);
  out.report = rep;
  return out;
}

TwoPoint mad_family(double mu, double d, double v1) {
  if (!(d > 0.0)) throw DomainError("mad_family needs d > 0");
  if (!(v1 < mu - 0.5 * d)) {
    std::ostringstream os;
    os << "mad_family needs v1 < mu - d/2 = " << (mu - 0.5 * d) << ", got " << v1;
    throw DomainError(os.str());
  }
  const double gap = mu - v1;
  TwoPoint tp;
  tp.v1 = v1;
  tp.w1 = d / (2.0 * gap);
  tp.w2 = 1.0 - tp.w1;
  tp.v2 = mu + 0.5 * d + d * d / (4.0 * gap - 2.0 * d);
  return tp;
}

FeasibilityResidual residuals(const DispersionSpec& spec, const TwoPoint& tp) {
  FeasibilityResidual r;
  r.mean_residual = tp.w1 * tp.v1 + tp.w2 * tp.v2 - spec.mu();
  r.dispersion_residual = tp.w1 * spec.phi(tp.v1) + tp.w2 * spec.phi(tp.v2) - spec.target();
  return r;
}

}  // namespace tightbounds
