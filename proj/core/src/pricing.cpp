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

#include "tightbounds/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tightbounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTol = 1e-10;

double v2_at(const PricingProblem& prob, double rho, const SolveConfig& cfg, Route route) {
  return cond_expectation_sup(prob.spec(), rho, cfg, route).value;
}

struct MadClosedForm {
  std::optional<double> rho1;
  double rho2;
  double threshold;
};

MadClosedForm mad_closed_form(double delta) {
  MadClosedForm out;
  if (delta < 1.0) out.rho1 = (4.0 + delta - std::sqrt(delta * delta + 8.0 * delta)) / 4.0;
  out.rho2 = (2.0 - delta) / (2.0 + delta);
  out.threshold = 2.0 * (std::sqrt(5.0) - 2.0);
  return out;
}

PricingSolution pick(const PricingProblem& prob, std::optional<double> rho1, double rho2,
                     const SolveConfig& cfg, Route route) {
  PricingSolution sol;
  sol.rho1 = rho1;
  sol.rho2 = rho2;
  if (!rho1) {
    sol.rho_star = rho2;
    sol.ratio = worst_case_ratio(prob, rho2, cfg, route);
    sol.regime = PricingRegime::Minimizer;
    return sol;
  }
  const double r1 = worst_case_ratio(prob, *rho1, cfg, route);
  if (std::abs(*rho1 - rho2) <= kTieTol) {
    sol.rho_star = *rho1;
    sol.ratio = r1;
    sol.regime = PricingRegime::Tie;
    return sol;
  }
  const double r2 = worst_case_ratio(prob, rho2, cfg, route);
  if (r2 < r1) {
    sol.rho_star = rho2;
    sol.ratio = r2;
    sol.regime = PricingRegime::Minimizer;
  } else {
    sol.rho_star = *rho1;
    sol.ratio = r1;
    sol.regime = PricingRegime::Intersection;
  }
  return sol;
}

}  // namespace

PricingProblem::PricingProblem(DispersionSpec spec) : spec_(std::move(spec)) {
  if (spec_.is_mad() && !(spec_.level() < 2.0)) {
    throw DomainError("mean-MAD pricing needs delta < 2");
  }
}

PricingProblem PricingProblem::mad(double delta) {
  return PricingProblem(DispersionSpec::mad(1.0, delta));
}

PricingProblem PricingProblem::power(double p, double delta) {
  return PricingProblem(DispersionSpec::power(1.0, p, delta));
}

PricingProblem PricingProblem::variance(double delta) {
  return PricingProblem(DispersionSpec::variance(1.0, delta));
}

PricingProblem PricingProblem::from_spec(const DispersionSpec& spec) {
  return PricingProblem(spec.normalized_to_unit_mean());
}

double PricingProblem::rho_max() const { return spec_.is_mad() ? 1.0 - 0.5 * delta() : 1.0; }

const char* to_string(PricingRegime regime) {
  switch (regime) {
    case PricingRegime::Intersection: return "Intersection";
    case PricingRegime::Minimizer: return "Minimizer";
    case PricingRegime::Tie: return "Tie";
  }
  return "unknown";
}

double worst_case_ratio(const PricingProblem& prob, double rho, const SolveConfig& cfg,
                        Route route) {
  if (!(rho > 0.0 && rho < 1.0)) {
    std::ostringstream os;
    os << "worst_case_ratio needs 0 < rho < 1, got " << rho;
    throw DomainError(os.str());
  }
  if (!(rho < prob.rho_max())) return kInf;
  const double v2 = v2_at(prob, rho, cfg, route);
  if (!std::isfinite(v2)) return kInf;
  const double w2 = (1.0 - rho) / (v2 - rho);
  return std::max(1.0 / w2, v2 / rho);
}

std::optional<double> intersection_price(const PricingProblem& prob, const SolveConfig& cfg,
                                         Route route) {
  // 1/w2 - v2/rho has the sign of v2 (2 rho - 1) - rho^2, negative up to 1/2.
  const double top = prob.rho_max();
  if (!(top > 0.5)) return std::nullopt;
  const ScalarFunction sign = [&](double rho) {
    const double v2 = v2_at(prob, rho, cfg, route);
    return v2 * (2.0 * rho - 1.0) - rho * rho;
  };
  double lo = 0.5;
  for (int k = 1; k <= 60; ++k) {
    const double hi = top - (top - 0.5) * std::ldexp(1.0, -k);
    if (!(hi < top)) break;
    if (sign(hi) > 0.0) return find_root(sign, lo, hi, cfg).root_or_min;
    lo = hi;
  }
  return std::nullopt;
}

double minimizer_price(const PricingProblem& prob, const SolveConfig& cfg, Route route) {
  const double top = prob.rho_max();
  const ScalarFunction ratio = [&](double rho) { return v2_at(prob, rho, cfg, route) / rho; };
  SolveConfig coarse = cfg;
  coarse.abs_tol = std::max(cfg.abs_tol, 1e-7);
  const double rho0 = minimize_scalar(ratio, 1e-6 * top, top * (1.0 - 1e-9), coarse).root_or_min;

  // Stationarity of v2/rho: rho v2'(rho) = v2(rho).
  const ScalarFunction foc = [&](double rho) {
    const double v2 = v2_at(prob, rho, cfg, route);
    return rho * cond_expectation_slope(prob.spec(), rho, v2) - v2;
  };
  try {
    double half = 1e-6;
    double lo = rho0 - half;
    double hi = rho0 + half;
    for (int k = 0; k < 40; ++k) {
      lo = std::max(rho0 - half, 0.5e-6 * top);
      hi = std::min(rho0 + half, top * (1.0 - 1e-10));
      if (foc(lo) < 0.0 && foc(hi) > 0.0) {
        return find_root(foc, lo, hi, cfg).root_or_min;
      }
      half *= 2.0;
    }
  } catch (const Error&) {
    // Fall through to the golden-section estimate.
  }
  return rho0;
}

PricingSolution solve(const PricingProblem& prob, const SolveConfig& cfg, Route route) {
  if (route == Route::Auto && prob.spec().is_mad()) {
    const double delta = prob.delta();
    const MadClosedForm cf = mad_closed_form(delta);
    PricingSolution sol;
    sol.rho1 = cf.rho1;
    sol.rho2 = cf.rho2;
    if (cf.rho1 && std::abs(*cf.rho1 - cf.rho2) <= kTieTol) {
      sol.regime = PricingRegime::Tie;
    } else if (delta < cf.threshold) {
      sol.regime = PricingRegime::Intersection;
    } else {
      sol.regime = PricingRegime::Minimizer;
    }
    if (sol.regime == PricingRegime::Minimizer) {
      sol.rho_star = cf.rho2;
      sol.ratio = 1.0 + 8.0 * delta / ((2.0 - delta) * (2.0 - delta));
    } else {
      sol.rho_star = *cf.rho1;
      sol.ratio = 1.0 + 2.0 * delta / (std::sqrt(delta * delta + 8.0 * delta) - 3.0 * delta);
    }
    return sol;
  }

  const auto rho1 = intersection_price(prob, cfg, route);
  const double rho2 = minimizer_price(prob, cfg, route);
  if (route == Route::Auto && prob.spec().route() == DispersionKind::Variance && rho1) {
    PricingSolution sol;
    sol.rho1 = rho1;
    sol.rho2 = rho2;
    sol.rho_star = *rho1;
    sol.ratio = worst_case_ratio(prob, *rho1, cfg, route);
    sol.regime = std::abs(*rho1 - rho2) <= kTieTol ? PricingRegime::Tie
                                                    : PricingRegime::Intersection;
    return sol;
  }
  return pick(prob, rho1, rho2, cfg, route);
}

double transition_delta(double p, const SolveConfig& cfg) {
  if (!(p >= 1.0 && p <= 2.0)) throw DomainError("transition_delta needs 1 <= p <= 2");
  // rho1 - rho2; a missing intersection counts as the minimiser side.
  const ScalarFunction gap = [&](double delta) {
    const PricingProblem prob = PricingProblem::power(p, delta);
    if (prob.spec().is_mad()) {
      const MadClosedForm cf = mad_closed_form(delta);
      return cf.rho1 ? *cf.rho1 - cf.rho2 : 1.0;
    }
    const auto rho1 = intersection_price(prob, cfg);
    return rho1 ? *rho1 - minimizer_price(prob, cfg) : 1.0;
  };

  constexpr double kLo = 1e-4;
  const double hi_end = p == 1.0 ? 2.0 * (1.0 - 1e-9) : 10.0;
  constexpr int kPoints = 80;
  double prev_delta = kLo;
  double prev = gap(prev_delta);
  for (int i = 1; i < kPoints; ++i) {
    const double delta = kLo * std::pow(hi_end / kLo, static_cast<double>(i) / (kPoints - 1));
    const double cur = gap(delta);
    if (prev < 0.0 && cur >= 0.0) return find_root(gap, prev_delta, delta, cfg).root_or_min;
    prev_delta = delta;
    prev = cur;
  }
  std::ostringstream os;
  os << "no crossing of rho1 and rho2 for p = " << p << " on delta in (" << kLo << ", "
     << hi_end << ")";
  throw NoTransition(os.str());
}

}  // namespace tightbounds
