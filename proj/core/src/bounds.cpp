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

#include "tightbounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tightbounds {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SolveReport closed_form_report(double value) { return {value, 0.0, 0, true}; }

// Inner solves run tighter than the caller's tolerance so the outer root
// sees a smooth function.
SolveConfig tightened(const SolveConfig& cfg) {
  SolveConfig inner = cfg;
  inner.abs_tol = cfg.abs_tol * 1e-2;
  inner.rel_tol = std::max(cfg.rel_tol * 1e-2, 1e-15);
  return inner;
}

// Right support point of the extremal distribution for cond-exp and tail
// bounds, with v1 pinned at t. Requires t < mu (t < mu - d/2 on MAD).
struct PinnedPoint {
  TwoPoint tp;
  SolveReport report;
};

PinnedPoint pinned_point(const DispersionSpec& spec, double t, const SolveConfig& cfg,
                         Route route) {
  const double mu = spec.mu();
  const double gap = mu - t;
  const DispersionKind path = route == Route::Generic && !spec.is_mad()
                                  ? DispersionKind::Custom
                                  : spec.route();
  switch (path) {
    case DispersionKind::MAD: {
      const TwoPoint tp = mad_family(mu, spec.level(), t);
      return {tp, closed_form_report(tp.v2)};
    }
    case DispersionKind::Variance: {
      const double sigma = spec.level();
      const double v2 = mu + sigma * sigma / gap;
      return {assemble_two_point(mu, t, v2), closed_form_report(v2)};
    }
    case DispersionKind::PowerDeviation: {
      const BoundResult r = cond_expectation_sup_power(mu, spec.level(), spec.p(), t, cfg);
      return {std::get<TwoPoint>(r.extremal), r.report};
    }
    case DispersionKind::Custom: {
      const SolvedTwoPoint s = solve_v2(spec, t, cfg);
      return {s.distribution, s.report};
    }
  }
  throw DomainError("unreachable dispersion route");
}

BoundResult degenerate(double value, Regime regime, double v1, double v2) {
  BoundResult r;
  r.value = value;
  r.regime = regime;
  r.extremal = LimitingPair{v1, v2};
  r.report = closed_form_report(value);
  return r;
}

BoundResult scarf_closed_form(double mu, double sigma, double t) {
  const double tau = t - mu;
  const double radius = std::hypot(tau, sigma);
  // (radius - tau) / 2 without cancellation for tau > 0.
  const double value =
      tau > 0.0 ? sigma * sigma / (2.0 * (radius + tau)) : 0.5 * (radius - tau);
  BoundResult r;
  r.value = value;
  r.extremal = assemble_two_point(mu, t - radius, t + radius);
  r.regime = Regime::Interior;
  r.report = closed_form_report(value);
  return r;
}

// Nested solve of the stationarity system for a general phi: the outer root
// runs over the offset of v2, the inner solve recovers v1 from the dispersion
// identity.
BoundResult max_operator_generic(const DispersionSpec& spec, double t, const SolveConfig& cfg) {
  const double mu = spec.mu();
  const double scale = spec.scale();
  const double target = spec.target();
  const SolveConfig inner = tightened(cfg);
  const double eps = 1e-12 * std::max(1.0, std::abs(mu));

  auto v1_of = [&](double v2) {
    const ScalarFunction g = [&](double u) { return f_value(spec, mu - u, v2) - target; };
    const auto [lo, hi] = bracket_upward(g, eps, scale, inner);
    return mu - find_root(g, lo, hi, inner).root_or_min;
  };
  auto h = [&](double x) { return (x - t) * spec.dphi(x) - spec.phi(x); };

  const double base = std::max(mu, t);
  const ScalarFunction g = [&](double y) {
    const double v2 = base + y;
    return h(v1_of(v2)) - h(v2);
  };

  double y_lo = 0.0;
  double y_hi = 0.0;
  if (t < mu) {
    const double v2_pinned = solve_v2(spec, t, inner).v2;
    y_hi = v2_pinned - mu;
    y_lo = y_hi;
    int k = 0;
    do {
      y_lo *= 0.5;
      if (++k > cfg.max_iter) throw NoBracket("max-operator: no lower bracket for v2");
    } while (!(g(y_lo) > 0.0));
  } else {
    y_lo = scale;
    int k = 0;
    while (!(g(y_lo) > 0.0)) {
      y_lo *= 0.5;
      if (++k > cfg.max_iter) throw NoBracket("max-operator: no lower bracket for v2");
    }
    const ScalarFunction neg_g = [&](double y) { return -g(y); };
    std::tie(y_lo, y_hi) = bracket_upward(neg_g, y_lo, scale, cfg);
  }

  const SolveReport rep = find_root(g, y_lo, y_hi, cfg);
  const double v2 = base + rep.root_or_min;
  const double v1 = v1_of(v2);
  BoundResult r;
  r.extremal = assemble_two_point(mu, v1, v2);
  r.value = (mu - v1) * (v2 - t) / (v2 - v1);
  r.regime = Regime::Interior;
  r.report = rep;
  return r;
}

}  // namespace

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::Interior: return "Interior";
    case Regime::DegenerateUnbounded: return "DegenerateUnbounded";
    case Regime::DegenerateZero: return "DegenerateZero";
    case Regime::Constant: return "Constant";
    case Regime::Limiting: return "Limiting";
  }
  return "Unknown";
}

BoundResult cond_expectation_sup(const DispersionSpec& spec, double t, const SolveConfig& cfg,
                                 Route route) {
  const double mu = spec.mu();
  if (spec.is_mad()) {
    const double d = spec.level();
    if (!(d < 2.0 * mu)) {
      throw DomainError("mean-MAD conditional expectation bound needs d < 2 mu");
    }
    if (!(t < mu - 0.5 * d)) {
      return degenerate(kInf, Regime::DegenerateUnbounded, mu - 0.5 * d, kInf);
    }
  } else if (!(t < mu)) {
    return degenerate(kInf, Regime::DegenerateUnbounded, mu, kInf);
  }

  const PinnedPoint pp = pinned_point(spec, t, cfg, route);
  BoundResult r;
  r.extremal = pp.tp;
  r.regime = Regime::Interior;
  r.report = pp.report;
  if (spec.is_mad() && route == Route::Auto) {
    const double gap = mu - t;
    const double d = spec.level();
    r.value = mu + gap * d / (2.0 * gap - d);
  } else {
    r.value = pp.tp.v2;
  }
  return r;
}

BoundResult cond_expectation_sup_power(double mu, double s, double p, double t,
                                       const SolveConfig& cfg) {
  if (!(p > 1.0)) throw DomainError("power cond-exp path needs p > 1");
  if (!(s > 0.0)) throw DomainError("power cond-exp path needs s > 0");
  if (!(t < mu)) throw DomainError("power cond-exp path needs t < mu");
  const double c = mu - t;
  const double sp = std::pow(s, p);
  const double cp = std::pow(c, p);
  const ScalarFunction poly = [&](double a) { return c * std::pow(a, p) + (cp - sp) * a - c * sp; };
  const auto [lo, hi] = bracket_upward(poly, 0.0, s, cfg);
  const SolveReport rep = find_root(poly, lo, hi, cfg);
  const double a = rep.root_or_min;

  BoundResult r;
  r.value = mu + a;
  r.extremal = assemble_two_point(mu, t, mu + a);
  r.regime = Regime::Interior;
  r.report = rep;
  return r;
}

BoundResult cond_expectation_sup_psi(const DispersionSpec& spec, double t,
                                     const ScalarFunction& psi, const SolveConfig& cfg) {
  // Grid check: non-decreasing and midpoint concave to the right of t.
  constexpr int kChecks = 201;
  const double h = 100.0 * spec.scale() / (kChecks - 1);
  double prev2 = psi(t);
  double prev1 = psi(t + h);
  if (prev1 < prev2) throw DomainError("psi must be non-decreasing");
  for (int i = 2; i < kChecks; ++i) {
    const double cur = psi(t + i * h);
    if (cur < prev1) throw DomainError("psi must be non-decreasing");
    const double mid = 0.5 * (prev2 + cur);
    if (prev1 < mid - 1e-12 * std::max(1.0, std::abs(mid))) {
      throw DomainError("psi must be concave");
    }
    prev2 = prev1;
    prev1 = cur;
  }

  BoundResult r = cond_expectation_sup(spec, t, cfg);
  r.value = psi(r.regime == Regime::Interior ? std::get<TwoPoint>(r.extremal).v2 : kInf);
  return r;
}

BoundResult tail_inf(const DispersionSpec& spec, double t, const SolveConfig& cfg, Route route) {
  const double mu = spec.mu();
  if (!(t < mu)) return degenerate(0.0, Regime::DegenerateZero, mu, kInf);

  const double gap = mu - t;
  if (spec.is_mad()) {
    const double d = spec.level();
    const double formula = 1.0 - d / (2.0 * gap);
    if (!(formula > 0.0) || !(t < mu - 0.5 * d)) {
      return degenerate(0.0, Regime::Constant, mu - 0.5 * d, kInf);
    }
    const TwoPoint tp = mad_family(mu, d, t);
    BoundResult r;
    r.value = route == Route::Auto ? formula : tp.w2;
    r.extremal = tp;
    r.regime = Regime::Interior;
    r.report = closed_form_report(r.value);
    return r;
  }

  BoundResult r;
  r.regime = Regime::Interior;
  if (spec.route() == DispersionKind::Variance && route == Route::Auto) {
    const double sigma = spec.level();
    r.value = gap * gap / (sigma * sigma + gap * gap);
    r.extremal = assemble_two_point(mu, t, mu + sigma * sigma / gap);
    r.report = closed_form_report(r.value);
    return r;
  }
  const PinnedPoint pp = pinned_point(spec, t, cfg, route);
  r.value = gap / (pp.tp.v2 - t);
  r.extremal = pp.tp;
  r.report = pp.report;
  return r;
}

BoundResult max_operator_sup(const DispersionSpec& spec, double t, const SolveConfig& cfg,
                             Route route) {
  if (spec.is_mad()) {
    if (route == Route::Generic) {
      throw DomainError("the nested max-operator solver needs a superlinear phi; MAD is closed-form");
    }
    return max_operator_sup_mad(spec.mu(), spec.level(), t);
  }
  if (route == Route::Generic) return max_operator_generic(spec, t, cfg);
  switch (spec.route()) {
    case DispersionKind::Variance: return scarf_closed_form(spec.mu(), spec.level(), t);
    case DispersionKind::PowerDeviation:
      return max_operator_sup_power(spec.mu(), spec.level(), spec.p(), t, cfg);
    default: return max_operator_generic(spec, t, cfg);
  }
}

BoundResult max_operator_sup_power(double mu, double s, double p, double t,
                                   const SolveConfig& cfg) {
  if (!(p > 1.0)) throw DomainError("power max-operator path needs p > 1");
  if (!(s > 0.0)) throw DomainError("power max-operator path needs s > 0");
  const double tau = t - mu;
  const double sp = std::pow(s, p);
  const SolveConfig inner = tightened(cfg);

  // Dispersion of the two-point law with deviations a (left) and b (right).
  auto dispersion = [p](double a, double b) {
    return a * b * (std::pow(a, p - 1.0) + std::pow(b, p - 1.0)) / (a + b);
  };
  auto b_of = [&](double a) {
    const ScalarFunction g = [&](double b) { return dispersion(a, b) - sp; };
    const auto [lo, hi] = bracket_upward(g, 0.0, s, inner);
    return find_root(g, lo, hi, inner).root_or_min;
  };
  // Stationarity: p(t - v1)(mu - v1)^{p-1} - (mu - v1)^p equals the same
  // expression on the right atom.
  auto stationarity = [&](double a, double b) {
    return (p - 1.0) * (std::pow(a, p) - std::pow(b, p)) +
           p * tau * (std::pow(a, p - 1.0) + std::pow(b, p - 1.0));
  };
  const ScalarFunction e = [&](double a) { return stationarity(a, b_of(a)); };

  double a_lo = 0.0;
  double a_hi = 0.0;
  if (tau < 0.0) {
    a_lo = -tau;  // v1 = t
    std::tie(a_lo, a_hi) = bracket_upward(e, a_lo, s, cfg);
  } else {
    a_lo = s;
    int k = 0;
    while (!(e(a_lo) < 0.0)) {
      a_lo *= 0.5;
      if (++k > cfg.max_iter) throw NoBracket("power max-operator: no lower bracket");
    }
    if (tau > 0.0) {
      // Largest admissible a keeps v2 >= t, i.e. b(a) >= tau.
      const ScalarFunction g = [&](double a) { return dispersion(a, tau) - sp; };
      const auto [lo, hi] = bracket_upward(g, 0.0, s, inner);
      a_hi = find_root(g, lo, hi, inner).root_or_min;
    } else {
      std::tie(a_lo, a_hi) = bracket_upward(e, a_lo, s, cfg);
    }
  }

  const SolveReport rep = find_root(e, a_lo, a_hi, cfg);
  const double a = rep.root_or_min;
  const double b = b_of(a);
  BoundResult r;
  r.value = a * (b - tau) / (a + b);
  r.extremal = assemble_two_point(mu, mu - a, mu + b);
  r.regime = Regime::Interior;
  r.report = rep;
  return r;
}

BoundResult max_operator_sup_mad(double mu, double d, double t) {
  if (!(d > 0.0)) throw DomainError("MAD max-operator needs d > 0");
  if (t < mu) return degenerate(mu - t + 0.5 * d, Regime::Limiting, -kInf, mu + 0.5 * d);
  if (t > mu) return degenerate(0.5 * d, Regime::Limiting, mu - 0.5 * d, kInf);
  return degenerate(0.5 * d, Regime::Constant, mu - 0.5 * d, kInf);
}

double cond_expectation_slope(const DispersionSpec& spec, double t, double v2) {
  const double mu = spec.mu();
  const double c = mu - t;
  switch (spec.route()) {
    case DispersionKind::MAD: {
      const double d = spec.level();
      const double den = 4.0 * c - 2.0 * d;
      return 4.0 * d * d / (den * den);
    }
    case DispersionKind::Variance: {
      const double sigma = spec.level();
      return sigma * sigma / (c * c);
    }
    case DispersionKind::PowerDeviation: {
      const double p = spec.p();
      const double sp = spec.target();
      const double a = v2 - mu;
      const double num = std::pow(a, p) + p * std::pow(c, p - 1.0) * a - sp;
      const double den = p * c * std::pow(a, p - 1.0) + std::pow(c, p) - sp;
      return num / den;
    }
    case DispersionKind::Custom: {
      const double secant = (spec.phi(v2) - spec.phi(t)) / (v2 - t);
      return -((v2 - mu) * (spec.dphi(t) - secant)) / (c * (spec.dphi(v2) - secant));
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace tightbounds
