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

#include <functional>
#include <string>
#include <vector>

#include "tightbounds/numerics.hpp"

namespace tightbounds {

enum class DispersionKind { PowerDeviation, Variance, MAD, Custom };

const char* to_string(DispersionKind kind);

/// A dispersion function shifted so that phi(mu) == 0 is its global minimum.
struct NormalizedPhi {
  ScalarFunction phi;
  ScalarFunction dphi;  // derivative, only meaningful off mu
};

/// Subtracts the tangent line at mu from a convex phi_raw.
///
/// The result is phi_raw(x) - a (x - mu) - phi_raw(mu) with a a subgradient at
/// mu (estimated from dphi_raw on both sides of mu). Throws NotSuperlinear if
/// |phi(x)/x| is not increasing over x = mu +/- 10^k, k = 2..6, and NotConvex
/// if strict midpoint convexity fails on the validation grid.
NormalizedPhi normalize_custom(const ScalarFunction& phi_raw, const ScalarFunction& dphi_raw,
                               double mu);

/// The ambiguity set: all distributions with mean `mu` and E[phi(X)] equal to
/// the dispersion target.
///
/// `level` is the deviation scale: target s^p for power deviation, sigma^2
/// for variance, d for MAD. For a custom phi the target is level minus the
/// raw phi's value at mu.
class DispersionSpec {
 public:
  static DispersionSpec power(double mu, double p, double s);
  static DispersionSpec variance(double mu, double sigma);
  static DispersionSpec mad(double mu, double d);
  /// `phi` must already satisfy phi(mu) == 0 (see normalize_custom);
  /// `phi_at_mu` is the raw offset removed during normalization.
  static DispersionSpec custom(double mu, NormalizedPhi phi, double level,
                               double phi_at_mu = 0.0);

  double mu() const { return mu_; }
  DispersionKind kind() const { return kind_; }
  /// Exponent: p for power deviation, 2 for variance, 1 for MAD, NaN for custom.
  double p() const { return p_; }
  double level() const { return level_; }

  /// The code path used by the solvers: p == 1 maps to MAD, p == 2 to
  /// Variance, everything else to its own kind.
  DispersionKind route() const;
  bool is_mad() const { return route() == DispersionKind::MAD; }

  double phi(double x) const;
  double dphi(double x) const;
  double target() const;

  /// Characteristic length of the set, used to seed brackets.
  double scale() const;

  /// Same kind with mean 1, for the scale-free pricing problem; level is
  /// divided by mu.
  DispersionSpec normalized_to_unit_mean() const;

 private:
  DispersionSpec() = default;

  double mu_ = 0.0;
  DispersionKind kind_ = DispersionKind::Variance;
  double p_ = 2.0;
  double level_ = 1.0;
  double phi_at_mu_ = 0.0;
  NormalizedPhi custom_;
};

double phi_value(const DispersionSpec& spec, double x);
double dispersion_target(const DispersionSpec& spec);

enum class ViolationKind { NotNormalized, NotConvex, NotSuperlinear };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

/// Grid-based check of the assumptions on phi. Returns an empty list iff all
/// checks pass. MAD (including power deviation with p == 1) is exempt from the
/// growth and strict-convexity checks.
std::vector<Violation> validate(const DispersionSpec& spec);

}  // namespace tightbounds
