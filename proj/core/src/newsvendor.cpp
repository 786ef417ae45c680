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

#include "tightbounds/newsvendor.hpp"

#include <algorithm>
#include <cmath>

#include "tightbounds/parallel.hpp"

namespace tightbounds {

namespace {

// Mass above q at the extremal demand, the negative slope of the max-operator
// bound in q. nullopt for limiting extremals.
std::optional<double> upper_mass(const BoundResult& r) {
  if (const auto* tp = std::get_if<TwoPoint>(&r.extremal)) return tp->w2;
  return std::nullopt;
}

NewsvendorSolution finish(const NewsvendorProblem& prob, double q, SolveReport report,
                          const SolveConfig& cfg, Route route) {
  NewsvendorSolution sol;
  sol.q_star = q;
  const BoundResult mo = max_operator_sup(prob.spec, q, cfg, route);
  sol.cost = prob.h * q + (prob.b + prob.h) * mo.value;
  sol.cost_centered = sol.cost - prob.h * prob.spec.mu();
  sol.extremal_demand = mo.extremal;
  sol.report = report;
  return sol;
}

NewsvendorSolution numeric_solve(const NewsvendorProblem& prob, const SolveConfig& cfg,
                                 Route route) {
  const double mu = prob.spec.mu();
  const double b = prob.b;
  const double h = prob.h;
  const double Q = 20.0 * prob.spec.scale() * std::max(std::sqrt(b / h), std::sqrt(h / b));
  const ScalarFunction J = [&](double q) { return worst_case_cost(prob, q, cfg, route); };

  // Golden section only resolves q to about sqrt(eps); a coarse pass is enough
  // to seed the first-order polish below.
  SolveConfig coarse = cfg;
  coarse.abs_tol = std::max(cfg.abs_tol, 1e-7 * prob.spec.scale());
  coarse.rel_tol = std::max(cfg.rel_tol, 1e-7);
  const SolveReport rough = minimize_scalar(J, mu - Q, mu + Q, coarse);
  const double q0 = rough.root_or_min;

  if (prob.spec.is_mad()) return finish(prob, q0, rough, cfg, route);

  const ScalarFunction foc = [&](double q) {
    const auto w2 = upper_mass(max_operator_sup(prob.spec, q, cfg, route));
    if (!w2) throw DomainError("limiting extremal demand has no first-order condition");
    return h - (b + h) * *w2;
  };
  try {
    double half = std::max(10.0 * coarse.tolerance_at(q0), 1e-9 * prob.spec.scale());
    double lo = q0 - half;
    double hi = q0 + half;
    for (int k = 0; k < 60 && !(foc(lo) < 0.0 && foc(hi) > 0.0); ++k) {
      half *= 2.0;
      lo = std::max(q0 - half, mu - Q);
      hi = std::min(q0 + half, mu + Q);
    }
    const SolveReport polished = find_root(foc, lo, hi, cfg);
    if (polished.converged && J(polished.root_or_min) <= J(q0)) {
      return finish(prob, polished.root_or_min, polished, cfg, route);
    }
  } catch (const Error&) {
    // Keep the golden-section minimiser.
  }
  return finish(prob, q0, rough, cfg, route);
}

}  // namespace

void NewsvendorProblem::validate() const {
  if (!(b > 0.0) || !(h > 0.0)) throw DomainError("newsvendor needs b > 0 and h > 0");
}

double worst_case_cost(const NewsvendorProblem& prob, double q, const SolveConfig& cfg,
                       Route route) {
  prob.validate();
  return prob.h * q + (prob.b + prob.h) * max_operator_sup(prob.spec, q, cfg, route).value;
}

NewsvendorSolution solve(const NewsvendorProblem& prob, const SolveConfig& cfg, Route route) {
  prob.validate();
  const double mu = prob.spec.mu();
  const double b = prob.b;
  const double h = prob.h;

  if (route == Route::Auto && prob.spec.is_mad()) {
    NewsvendorSolution sol = finish(prob, mu, {mu, 0.0, 0, true}, cfg, route);
    sol.cost = h * mu + (b + h) * 0.5 * prob.spec.level();
    sol.cost_centered = sol.cost - h * mu;
    return sol;
  }
  if (route == Route::Auto && prob.spec.route() == DispersionKind::Variance) {
    const double sigma = prob.spec.level();
    const double up = std::sqrt(b / h);
    const double down = std::sqrt(h / b);
    NewsvendorSolution sol;
    sol.q_star = mu + 0.5 * sigma * (up - down);
    sol.cost = h * mu + sigma * std::sqrt(b * h);
    sol.cost_centered = sigma * std::sqrt(b * h);
    sol.cost_mu_plus_sigma_sqrt_bh = mu + sigma * std::sqrt(b * h);
    TwoPoint demand;
    demand.v1 = mu - sigma * down;
    demand.w1 = b / (b + h);
    demand.v2 = mu + sigma * up;
    demand.w2 = h / (b + h);
    sol.extremal_demand = demand;
    sol.report = {sol.q_star, 0.0, 0, true};
    return sol;
  }
  NewsvendorSolution sol = numeric_solve(prob, cfg, route);
  if (prob.spec.route() == DispersionKind::Variance) {
    sol.cost_mu_plus_sigma_sqrt_bh = mu + prob.spec.level() * std::sqrt(b * h);
  }
  return sol;
}

PbarResult sweep_pbar(double mu, double s, double b, double h, const std::vector<double>& p_grid,
                      const SolveConfig& cfg) {
  if (p_grid.empty()) throw DomainError("sweep_pbar needs a non-empty p grid");
  for (double p : p_grid) {
    if (!(p > 1.0)) throw DomainError("sweep_pbar needs every p > 1");
  }
  const auto q_of = [&](double p) {
    return solve({DispersionSpec::power(mu, p, s), b, h}, cfg).q_star;
  };

  PbarResult out;
  out.points.resize(p_grid.size());
  parallel_for(p_grid.size(), threads_from_env(), [&](std::size_t i) {
    const NewsvendorSolution sol = solve({DispersionSpec::power(mu, p_grid[i], s), b, h}, cfg);
    out.points[i] = {p_grid[i], sol.q_star, sol.cost};
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    if (out.points[i].q_star > out.points[best].q_star) best = i;
  }
  out.p_bar = out.points[best].p;
  out.q_star_at_p_bar = out.points[best].q_star;
  out.interior = best > 0 && best + 1 < out.points.size();
  if (!out.interior) return out;

  SolveConfig refine = cfg;
  refine.abs_tol = 1e-3;
  refine.rel_tol = 1e-12;
  const SolveReport r = minimize_scalar([&](double p) { return -q_of(p); },
                                        out.points[best - 1].p, out.points[best + 1].p, refine);
  const double q_ref = q_of(r.root_or_min);
  if (q_ref >= out.q_star_at_p_bar) {
    out.p_bar = r.root_or_min;
    out.q_star_at_p_bar = q_ref;
  }
  return out;
}

}  // namespace tightbounds
