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
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace tightbounds {

/// Tolerances and limits shared by the root finders and the scalar minimizer.
///
/// `abs_tol` and `rel_tol` are tolerances on the unknown (not on the function
/// value). A solve stops once the remaining uncertainty in the unknown is below
/// max(abs_tol, rel_tol * |x|).
struct SolveConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_iter = 200;
  double bracket_growth = 2.0;

  /// Throws DomainError unless abs_tol > 0, rel_tol > 0, max_iter >= 1 and
  /// bracket_growth > 1.
  void validate() const;

  double tolerance_at(double x) const;
};

/// Outcome of a root solve or a minimization.
///
/// For root solves `residual` is the half-width of the final bracket, i.e. a
/// bound on |x - x_true|. For minimization it is the half-width of the final
/// golden-section interval.
struct SolveReport {
  double root_or_min = std::numeric_limits<double>::quiet_NaN();
  double residual = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  bool converged = false;
};

enum class ErrorKind {
  NoBracket,
  NoConvergence,
  DomainError,
  NotConvex,
  NotSuperlinear,
  NoTransition,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class NoBracket : public Error {
 public:
  explicit NoBracket(const std::string& what) : Error(ErrorKind::NoBracket, what) {}
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, SolveReport report)
      : Error(ErrorKind::NoConvergence, what), report_(report) {}
  const SolveReport& report() const noexcept { return report_; }

 private:
  SolveReport report_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::DomainError, what) {}
};

class NotConvex : public Error {
 public:
  explicit NotConvex(const std::string& what) : Error(ErrorKind::NotConvex, what) {}
};

class NotSuperlinear : public Error {
 public:
  explicit NotSuperlinear(const std::string& what)
      : Error(ErrorKind::NotSuperlinear, what) {}
};

class NoTransition : public Error {
 public:
  explicit NoTransition(const std::string& what) : Error(ErrorKind::NoTransition, what) {}
};

using ScalarFunction = std::function<double(double)>;

/// Brent-style bracketing root finder: keeps a sign-change bracket, prefers
/// inverse quadratic / secant steps and falls back to bisection.
///
/// Requires sign(f(lo)) != sign(f(hi)); a zero at either end is returned as is.
/// Throws NoBracket if the signs agree and NoConvergence after cfg.max_iter
/// iterations.
SolveReport find_root(const ScalarFunction& f, double lo, double hi,
                      const SolveConfig& cfg = {});

/// Geometric expansion of [lo, lo + step0] to the right until f changes sign.
///
/// Requires f(lo) < 0. Returns [a, b] with f(a) <= 0 <= f(b). Throws
/// NoConvergence if no sign change appears within cfg.max_iter expansions.
std::pair<double, double> bracket_upward(const ScalarFunction& f, double lo, double step0,
                                         const SolveConfig& cfg = {});

/// Golden-section minimization on [lo, hi]. Intended for unimodal f; ties
/// within rounding are resolved toward the left end, so a plateau yields its
/// smallest point.
SolveReport minimize_scalar(const ScalarFunction& f, double lo, double hi,
                            const SolveConfig& cfg = {});

}  // namespace tightbounds
