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

#include "tightbounds/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tightbounds {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double checked_eval(const ScalarFunction& f, double x) {
  const double y = f(x);
  if (std::isnan(y)) {
    std::ostringstream os;
    os << "function returned NaN at x = " << x;
    throw DomainError(os.str());
  }
  return y;
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::NotSuperlinear: return "NotSuperlinear";
    case ErrorKind::NoTransition: return "NoTransition";
  }
  return "Unknown";
}

void SolveConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_iter < 1 || !(bracket_growth > 1.0)) {
    throw DomainError(
        "SolveConfig requires abs_tol > 0, rel_tol > 0, max_iter >= 1, bracket_growth > 1");
  }
}

double SolveConfig::tolerance_at(double x) const {
  return std::max(abs_tol, rel_tol * std::abs(x));
}

SolveReport find_root(const ScalarFunction& f, double lo, double hi, const SolveConfig& cfg) {
  cfg.validate();
  if (!(lo < hi)) {
    if (hi < lo) {
      std::swap(lo, hi);
    } else {
      throw DomainError("find_root needs a non-degenerate interval");
    }
  }

  double a = lo;
  double b = hi;
  double fa = checked_eval(f, a);
  double fb = checked_eval(f, b);
  if (fa == 0.0) return {a, 0.0, 0, true};
  if (fb == 0.0) return {b, 0.0, 0, true};
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream os;
    os << "no sign change on [" << lo << ", " << hi << "]: f(lo) = " << fa
       << ", f(hi) = " << fb;
    throw NoBracket(os.str());
  }

  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;

  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }

    const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * cfg.tolerance_at(b);
    const double xm = 0.5 * (c - b);
    if (fb == 0.0) return {b, 0.0, iter, true};
    if (std::abs(xm) <= tol1) return {b, std::abs(xm), iter, true};

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // Interpolation step: secant when only two distinct points, else
      // inverse quadratic.
      const double s = fb / fa;
      double p;
      double q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }

    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
    fb = checked_eval(f, b);
  }

  SolveReport report{b, std::abs(0.5 * (c - b)), cfg.max_iter, false};
  throw NoConvergence("find_root exceeded max_iter", report);
}

std::pair<double, double> bracket_upward(const ScalarFunction& f, double lo, double step0,
                                         const SolveConfig& cfg) {
  cfg.validate();
  if (!(step0 > 0.0)) throw DomainError("bracket_upward needs step0 > 0");
  const double flo = checked_eval(f, lo);
  if (!(flo < 0.0)) throw DomainError("bracket_upward needs f(lo) < 0");

  double a = lo;
  double step = step0;
  for (int i = 0; i < cfg.max_iter; ++i) {
    const double b = lo + step;
    const double fb = checked_eval(f, b);
    if (fb >= 0.0) return {a, b};
    a = b;
    step *= cfg.bracket_growth;
  }
  SolveReport report{a, step, cfg.max_iter, false};
  throw NoConvergence("bracket_upward found no sign change", report);
}

SolveReport minimize_scalar(const ScalarFunction& f, double lo, double hi,
                            const SolveConfig& cfg) {
  cfg.validate();
  if (!(lo < hi)) throw DomainError("minimize_scalar needs lo < hi");

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = checked_eval(f, c);
  double fd = checked_eval(f, d);

  auto left_wins = [](double fl, double fr) {
    return fl <= fr + 4.0 * kEps * std::max(std::abs(fl), std::abs(fr));
  };

  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    const double half = 0.5 * (b - a);
    if (half <= cfg.tolerance_at(0.5 * (a + b))) {
      const bool take_c = left_wins(fc, fd);
      return {take_c ? c : d, half, iter, true};
    }
    if (left_wins(fc, fd)) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = checked_eval(f, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = checked_eval(f, d);
    }
  }
  SolveReport report{0.5 * (a + b), 0.5 * (b - a), cfg.max_iter, false};
  throw NoConvergence("minimize_scalar exceeded max_iter", report);
}

}  // namespace tightbounds
