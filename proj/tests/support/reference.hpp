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

// Slow, obviously-correct reference computations used only by the tests.
// Nothing here calls into the library's solvers.

#include <cmath>
#include <functional>
#include <limits>

namespace ref {

// Plain bisection on a sign change; 300 halvings or until the midpoint stops moving.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section maximisation of a unimodal function.
inline double golden_argmax(const std::function<double(double)>& f, double lo, double hi,
                            int iters = 400) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-15 * (1.0 + std::abs(a)); ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

inline double power_phi(double mu, double p, double x) { return std::pow(std::abs(x - mu), p); }

// Mixture dispersion of the mean-mu two-point law on {v1, v2}.
inline double mixture(const std::function<double(double)>& phi, double mu, double v1, double v2) {
  return ((v2 - mu) * phi(v1) + (mu - v1) * phi(v2)) / (v2 - v1);
}

// v2 > mu with mixture(v1, v2) = target, by expansion then bisection.
inline double v2_for(const std::function<double(double)>& phi, double mu, double target, double v1) {
  double hi = mu + 1.0;
  while (mixture(phi, mu, v1, hi) < target) hi = mu + 2.0 * (hi - mu);
  return bisect([&](double v2) { return mixture(phi, mu, v1, v2) - target; }, mu, hi);
}

// sup E[max(X - t, 0)] over two-point laws, maximising over v1 < min(mu, t)
// with v2 = v2_for(v1). The search runs in u = log(min(mu,t) - v1).
inline double max_op_two_point(const std::function<double(double)>& phi, double mu, double target,
                               double t) {
  const double top = std::min(mu, t);
  const auto value = [&](double u) {
    const double v1 = top - std::exp(u);
    const double v2 = v2_for(phi, mu, target, v1);
    const double w2 = (mu - v1) / (v2 - v1);
    return w2 * std::max(v2 - t, 0.0);
  };
  const double u = golden_argmax(value, -30.0, 12.0);
  return value(u);
}

// Cond-exp bound for |x - mu|^p: mu + a with a > 0 the root of
// (mu-t) a^p + ((mu-t)^p - s^p) a - (mu-t) s^p = 0.
inline double power_cond_exp(double mu, double s, double p, double t) {
  const double c = mu - t;
  const double sp = std::pow(s, p);
  const auto eq = [&](double a) { return c * std::pow(a, p) + (std::pow(c, p) - sp) * a - c * sp; };
  double hi = 1.0;
  while (eq(hi) < 0) hi *= 2.0;
  return mu + bisect(eq, 0.0, hi);
}

}  // namespace ref
