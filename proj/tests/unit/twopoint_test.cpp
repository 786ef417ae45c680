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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "reference.hpp"
#include "tightbounds/twopoint.hpp"

using namespace tightbounds;

namespace {

void expect_feasible(const DispersionSpec& spec, const TwoPoint& tp) {
  EXPECT_NEAR(tp.w1 + tp.w2, 1.0, 1e-12);
  EXPECT_GE(tp.w1, 0.0);
  EXPECT_GE(tp.w2, 0.0);
  EXPECT_LT(tp.v1, spec.mu());
  EXPECT_GT(tp.v2, spec.mu());
  const auto r = residuals(spec, tp);
  EXPECT_LE(std::abs(r.mean_residual), 1e-10 * std::max(1.0, std::abs(spec.mu())));
  EXPECT_LE(std::abs(r.dispersion_residual), 1e-8 * spec.target());
}

}  // namespace

TEST(FValue, VarianceSymmetric) {
  EXPECT_DOUBLE_EQ(f_value(DispersionSpec::variance(1, 1), 0.0, 2.0), 1.0);
}

TEST(FValue, MadSymmetric) { EXPECT_DOUBLE_EQ(f_value(DispersionSpec::mad(1, 1), 0.0, 2.0), 1.0); }

TEST(FValue, VanishesAsLowerAtomApproachesMean) {
  const auto spec = DispersionSpec::power(1, 1.5, 1);
  double prev = f_value(spec, 0.9, 3.0);
  for (int k = 2; k <= 10; ++k) {
    const double cur = f_value(spec, 1.0 - std::pow(10.0, -k), 3.0);
    EXPECT_LT(cur, prev);
    prev = cur;
  }
  EXPECT_LT(prev, 1e-9);
}

TEST(FValue, OrderingViolationIsDomainError) {
  EXPECT_THROW(f_value(DispersionSpec::variance(1, 1), 1.0, 2.0), DomainError);
  EXPECT_THROW(f_value(DispersionSpec::variance(1, 1), 0.0, 0.5), DomainError);
}

TEST(SolveV2, VarianceAtZero) {
  const auto spec = DispersionSpec::variance(1, 1);
  const auto s = solve_v2(spec, 0.0);
  EXPECT_NEAR(s.v2, 2.0, 1e-10);
  EXPECT_NEAR(s.distribution.w1, 0.5, 1e-10);
  EXPECT_NEAR(s.distribution.w2, 0.5, 1e-10);
  expect_feasible(spec, s.distribution);
}

TEST(SolveV2, PowerTwoAtMinusOne) {
  const auto spec = DispersionSpec::power(1, 2, 1);
  const auto s = solve_v2(spec, -1.0);
  EXPECT_NEAR(s.v2, 1.5, 1e-10);
  EXPECT_NEAR(s.distribution.w2, 0.8, 1e-10);
}

TEST(SolveV2, PowerOneAndAHalfMatchesBisection) {
  const auto spec = DispersionSpec::power(1, 1.5, 1);
  const double expected =
      ref::v2_for([](double x) { return ref::power_phi(1, 1.5, x); }, 1.0, 1.0, 0.0);
  const auto s = solve_v2(spec, 0.0);
  EXPECT_NEAR(s.v2, expected, 1e-9 * expected);
  expect_feasible(spec, s.distribution);
}

TEST(SolveV2, RejectsMadAndUpperV1) {
  EXPECT_THROW(solve_v2(DispersionSpec::mad(1, 0.5), 0.0), DomainError);
  EXPECT_THROW(solve_v2(DispersionSpec::variance(1, 1), 1.0), DomainError);
}

TEST(SolveV2, CustomPhi) {
  const auto n = normalize_custom([](double x) { return std::cosh(x); },
                                  [](double x) { return std::sinh(x); }, 0.0);
  const auto spec = DispersionSpec::custom(0.0, n, 1.0);
  const auto s = solve_v2(spec, -1.0);
  expect_feasible(spec, s.distribution);
}

TEST(MadFamily, ClosedFormPoint) {
  const auto tp = mad_family(1.0, 0.5, 0.0);
  EXPECT_DOUBLE_EQ(tp.w1, 0.25);
  EXPECT_DOUBLE_EQ(tp.w2, 0.75);
  // Mean and MAD identities pin v2 = 4/3 for this point.
  EXPECT_NEAR(tp.v2, 4.0 / 3.0, 1e-15);
  const auto r = residuals(DispersionSpec::mad(1.0, 0.5), tp);
  EXPECT_LT(std::abs(r.mean_residual), 1e-12);
  EXPECT_LT(std::abs(r.dispersion_residual), 1e-12);
}

TEST(MadFamily, DivergesAtBoundary) {
  double prev = 0.0;
  for (int k = 2; k <= 12; k += 2) {
    const double v2 = mad_family(1.0, 0.5, 0.75 - std::pow(10.0, -k)).v2;
    EXPECT_GT(v2, prev);
    prev = v2;
  }
  EXPECT_GT(prev, 1e9);
}

TEST(MadFamily, BoundaryIsDomainError) { EXPECT_THROW(mad_family(1.0, 0.5, 0.75), DomainError); }

TEST(MadFamily, UpperAtomAboveHalfDeviation) {
  for (double v1 : {-100.0, -3.0, 0.0, 0.5, 0.74}) {
    EXPECT_GT(mad_family(1.0, 0.5, v1).v2, 1.25);
  }
}

TEST(Residuals, Examples) {
  const auto spec = DispersionSpec::variance(1, 1);
  const auto r = residuals(spec, {0.0, 0.5, 2.0, 0.5});
  EXPECT_DOUBLE_EQ(r.mean_residual, 0.0);
  EXPECT_DOUBLE_EQ(r.dispersion_residual, 0.0);
  EXPECT_NEAR(residuals(spec, {0.0, 0.6, 2.0, 0.4}).mean_residual, -0.2, 1e-15);
}

TEST(TwoPointProperties, MixtureIncreasingInUpperAtom) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double p : {1.2, 1.5, 2.0, 3.0}) {
    const auto spec = DispersionSpec::power(1, p, 1);
    for (int i = 0; i < 500; ++i) {
      const double v1 = 1.0 - 10.0 * u(rng) - 1e-6;
      double a = 1.0 + 10.0 * u(rng) + 1e-6;
      double b = 1.0 + 10.0 * u(rng) + 1e-6;
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      EXPECT_GT(f_value(spec, v1, b), f_value(spec, v1, a)) << p;
    }
  }
}

TEST(TwoPointProperties, UpperAtomIncreasingInLowerAtom) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-20.0, 1.0);
  for (double p : {1.2, 1.5, 2.0, 3.0}) {
    const auto spec = DispersionSpec::power(1, p, 1);
    std::vector<double> v1s(40);
    for (auto& v : v1s) v = u(rng);
    std::sort(v1s.begin(), v1s.end());
    v1s.erase(std::unique(v1s.begin(), v1s.end()), v1s.end());
    double prev = -1.0;
    for (double v1 : v1s) {
      if (!(v1 < 1.0)) continue;
      const auto s = solve_v2(spec, v1);
      EXPECT_GT(s.v2, prev);
      prev = s.v2;
      expect_feasible(spec, s.distribution);
    }
  }
}

TEST(TwoPointProperties, UpperAtomDivergesAsLowerAtomApproachesMean) {
  const auto spec = DispersionSpec::power(1, 1.5, 1);
  double v2 = 0.0;
  for (int k = 1; k <= 8; ++k) v2 = solve_v2(spec, 1.0 - std::pow(10.0, -k)).v2;
  EXPECT_GT(v2, 1e4);
}
