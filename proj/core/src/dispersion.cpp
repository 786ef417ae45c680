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

#include "tightbounds/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace tightbounds {
namespace {

constexpr int kGridPoints = 1001;
constexpr double kConvexityMargin = 1e-12;

std::optional<std::string> superlinear_failure(const ScalarFunction& phi, double mu) {
  for (const double sign : {-1.0, 1.0}) {
    double previous = -1.0;
    for (int k = 2; k <= 6; ++k) {
      const double x = mu + sign * std::pow(10.0, k);
      const double ratio = std::abs(phi(x) / x);
      if (!(ratio > previous)) {
        std::ostringstream os;
        os << "|phi(x)/x| stops increasing at x = " << x;
        return os.str();
      }
      if (std::isinf(ratio)) break;  // overflowed: growing faster than any line
      previous = ratio;
    }
  }
  return std::nullopt;
}

// Strict midpoint convexity over consecutive triples of a uniform grid.
std::optional<std::string> convexity_failure(const ScalarFunction& phi, double lo, double hi) {
  const double h = (hi - lo) / (kGridPoints - 1);
  double f0 = phi(lo);
  double f1 = phi(lo + h);
  for (int i = 2; i < kGridPoints; ++i) {
    const double x2 = lo + i * h;
    const double f2 = phi(x2);
    const double chord = 0.5 * (f0 + f2);
    if (!(chord - f1 > kConvexityMargin * std::abs(chord))) {
      std::ostringstream os;
      os << "strict midpoint convexity fails around x = " << (x2 - h);
      return os.str();
    }
    f0 = f1;
    f1 = f2;
  }
  return std::nullopt;
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be finite");
  }
}

}  // namespace

const char* to_string(DispersionKind kind) {
  switch (kind) {
    case DispersionKind::PowerDeviation: return "power";
    case DispersionKind::Variance: return "variance";
    case DispersionKind::MAD: return "mad";
    case DispersionKind::Custom: return "custom";
  }
  return "unknown";
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NotNormalized: return "NotNormalized";
    case ViolationKind::NotConvex: return "NotConvex";
    case ViolationKind::NotSuperlinear: return "NotSuperlinear";
  }
  return "Unknown";
}

NormalizedPhi normalize_custom(const ScalarFunction& phi_raw, const ScalarFunction& dphi_raw,
                               double mu) {
  require_finite(mu, "mu");
  const double eta = 1e-6 * std::max(1.0, std::abs(mu));
  const double slope = 0.5 * (dphi_raw(mu - eta) + dphi_raw(mu + eta));
  const double offset = phi_raw(mu);

  NormalizedPhi out;
  out.phi = [phi_raw, slope, offset, mu](double x) {
    return phi_raw(x) - slope * (x - mu) - offset;
  };
  out.dphi = [dphi_raw, slope](double x) { return dphi_raw(x) - slope; };

  if (auto why = superlinear_failure(out.phi, mu)) throw NotSuperlinear(*why);
  if (auto why = convexity_failure(out.phi, mu - 100.0, mu + 100.0)) throw NotConvex(*why);
  return out;
}

DispersionSpec DispersionSpec::power(double mu, double p, double s) {
  require_finite(mu, "mu");
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("power deviation needs p >= 1");
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("dispersion level must be > 0");
  DispersionSpec spec;
  spec.mu_ = mu;
  spec.kind_ = DispersionKind::PowerDeviation;
  spec.p_ = p;
  spec.level_ = s;
  return spec;
}

DispersionSpec DispersionSpec::variance(double mu, double sigma) {
  require_finite(mu, "mu");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be > 0");
  DispersionSpec spec;
  spec.mu_ = mu;
  spec.kind_ = DispersionKind::Variance;
  spec.p_ = 2.0;
  spec.level_ = sigma;
  return spec;
}

DispersionSpec DispersionSpec::mad(double mu, double d) {
  require_finite(mu, "mu");
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("MAD level d must be > 0");
  DispersionSpec spec;
  spec.mu_ = mu;
  spec.kind_ = DispersionKind::MAD;
  spec.p_ = 1.0;
  spec.level_ = d;
  return spec;
}

DispersionSpec DispersionSpec::custom(double mu, NormalizedPhi phi, double level,
                                      double phi_at_mu) {
  require_finite(mu, "mu");
  if (!phi.phi || !phi.dphi) throw DomainError("custom dispersion needs phi and dphi");
  if (!(level - phi_at_mu > 0.0)) {
    throw DomainError("custom dispersion target (level - phi(mu)) must be > 0");
  }
  DispersionSpec spec;
  spec.mu_ = mu;
  spec.kind_ = DispersionKind::Custom;
  spec.p_ = std::numeric_limits<double>::quiet_NaN();
  spec.level_ = level;
  spec.phi_at_mu_ = phi_at_mu;
  spec.custom_ = std::move(phi);
  return spec;
}

DispersionKind DispersionSpec::route() const {
  if (kind_ == DispersionKind::PowerDeviation) {
    if (p_ == 1.0) return DispersionKind::MAD;
    if (p_ == 2.0) return DispersionKind::Variance;
  }
  return kind_;
}

double DispersionSpec::phi(double x) const {
  const double dev = x - mu_;
  switch (route()) {
    case DispersionKind::Variance: return dev * dev;
    case DispersionKind::MAD: return std::abs(dev);
    case DispersionKind::PowerDeviation: return std::pow(std::abs(dev), p_);
    case DispersionKind::Custom: return custom_.phi(x);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double DispersionSpec::dphi(double x) const {
  const double dev = x - mu_;
  switch (route()) {
    case DispersionKind::Variance: return 2.0 * dev;
    case DispersionKind::MAD: return dev > 0.0 ? 1.0 : (dev < 0.0 ? -1.0 : 0.0);
    case DispersionKind::PowerDeviation:
      if (dev == 0.0) return 0.0;
      return std::copysign(p_ * std::pow(std::abs(dev), p_ - 1.0), dev);
    case DispersionKind::Custom: return custom_.dphi(x);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double DispersionSpec::target() const {
  switch (kind_) {
    case DispersionKind::PowerDeviation: return std::pow(level_, p_);
    case DispersionKind::Variance: return level_ * level_;
    case DispersionKind::MAD: return level_;
    case DispersionKind::Custom: return level_ - phi_at_mu_;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double DispersionSpec::scale() const {
  return kind_ == DispersionKind::Custom ? 1.0 : level_;
}

DispersionSpec DispersionSpec::normalized_to_unit_mean() const {
  if (kind_ == DispersionKind::Custom) {
    throw DomainError("custom dispersion cannot be rescaled to unit mean");
  }
  if (!(mu_ > 0.0)) throw DomainError("unit-mean normalization needs mu > 0");
  DispersionSpec out = *this;
  out.mu_ = 1.0;
  out.level_ = level_ / mu_;
  return out;
}

double phi_value(const DispersionSpec& spec, double x) { return spec.phi(x); }

double dispersion_target(const DispersionSpec& spec) { return spec.target(); }

std::vector<Violation> validate(const DispersionSpec& spec) {
  std::vector<Violation> out;
  const double mu = spec.mu();
  const ScalarFunction phi = [&spec](double x) { return spec.phi(x); };

  const double span = 100.0 * spec.level();
  const double h = 2.0 * span / (kGridPoints - 1);
  bool normalized = spec.phi(mu) == 0.0;
  for (int i = 0; i < kGridPoints && normalized; ++i) {
    const double x = mu - span + i * h;
    if (x != mu && !(spec.phi(x) > 0.0)) normalized = false;
  }
  if (!normalized) {
    out.push_back({ViolationKind::NotNormalized, "phi(mu) must be 0 and phi > 0 elsewhere"});
  }

  if (spec.is_mad()) return out;

  if (auto why = superlinear_failure(phi, mu)) {
    out.push_back({ViolationKind::NotSuperlinear, *why});
  }
  if (auto why = convexity_failure(phi, mu - span, mu + span)) {
    out.push_back({ViolationKind::NotConvex, *why});
  }
  return out;
}

}  // namespace tightbounds
