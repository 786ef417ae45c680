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

#include "tightbounds/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "tightbounds/bounds.hpp"
#include "tightbounds/parallel.hpp"

namespace tightbounds::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool better(const Objective& obj, double candidate, double incumbent) {
  return obj.maximize() ? candidate > incumbent : candidate < incumbent;
}

double worst_value(const Objective& obj) { return obj.maximize() ? -kInf : kInf; }

// E[phi] of the two-point law with mean mu, written out from the definition.
double two_point_dispersion(const DispersionSpec& spec, double v1, double v2) {
  const double mu = spec.mu();
  const double w2 = (mu - v1) / (v2 - v1);
  return (1.0 - w2) * spec.phi(v1) + w2 * spec.phi(v2);
}

// Plain bisection for v2 > mu matching the dispersion target, independent of
// the twopoint solver. nullopt when no finite v2 exists.
std::optional<double> oracle_v2(const DispersionSpec& spec, double v1) {
  const double mu = spec.mu();
  const double target = spec.target();
  const auto gap = [&](double v2) { return two_point_dispersion(spec, v1, v2) - target; };
  double lo = mu;
  double step = spec.scale();
  double hi = mu + step;
  int expansions = 0;
  while (!(gap(hi) >= 0.0)) {
    lo = hi;
    step *= 2.0;
    hi = mu + step;
    if (++expansions > 1100 || !std::isfinite(hi)) return std::nullopt;
  }
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (gap(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double v2 = 0.5 * (lo + hi);
  if (!(v2 > mu) || !std::isfinite(v2)) return std::nullopt;
  return v2;
}

std::vector<double> sweep_grid(const DispersionSpec& spec, double t, int grid_size) {
  const double mu = spec.mu();
  const double G = 50.0 * spec.level();
  const double upper = spec.is_mad() ? mu - 0.5 * spec.level() : mu;
  const double lower = mu - G;

  const int refine = grid_size / 8;
  const int uniform = grid_size - 4 * refine;

  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(grid_size));
  const double width = upper - lower;
  for (int i = 0; i < uniform; ++i) pts.push_back(lower + (i + 0.5) * width / uniform);

  const auto geometric = [&](int j, double decades) {
    return refine <= 1 ? 1.0 : std::pow(10.0, decades * j / (refine - 1));
  };
  for (int j = 0; j < refine; ++j) {
    const double shrink = geometric(j, -12.0);
    pts.push_back(upper - width * shrink);
    pts.push_back(t - width * shrink);
    pts.push_back(t + width * shrink);
    pts.push_back(mu - G * geometric(j, 6.0));
  }

  std::vector<double> kept;
  kept.reserve(pts.size());
  for (double v : pts) {
    if (std::isfinite(v) && v < upper) kept.push_back(v);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return kept;
}

// Solves A w = rhs for a 3x3 system by Gaussian elimination with partial
// pivoting. Returns false when the system is numerically singular.
bool solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> rhs,
            std::array<double, 3>& w) {
  const auto A0 = a;
  const auto b0 = rhs;
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    double row_scale = 0.0;
    for (int c = 0; c < 3; ++c) row_scale = std::max(row_scale, std::abs(A0[piv][c]));
    if (!(std::abs(a[piv][col]) > 1e-13 * row_scale)) return false;
    std::swap(a[col], a[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (int r = col + 1; r < 3; ++r) {
      const double m = a[r][col] / a[col][col];
      for (int c = col; c < 3; ++c) a[r][c] -= m * a[col][c];
      rhs[r] -= m * rhs[col];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double acc = rhs[r];
    for (int c = r + 1; c < 3; ++c) acc -= a[r][c] * w[c];
    w[r] = acc / a[r][r];
    if (!std::isfinite(w[r])) return false;
  }
  // Reject solutions that do not reproduce the system.
  for (int r = 0; r < 3; ++r) {
    double lhs = 0.0;
    double mag = std::abs(b0[r]);
    for (int c = 0; c < 3; ++c) {
      lhs += A0[r][c] * w[c];
      mag = std::max(mag, std::abs(A0[r][c] * w[c]));
    }
    if (std::abs(lhs - b0[r]) > 1e-9 * std::max(1.0, mag)) return false;
  }
  return true;
}

struct ChunkResult {
  double best = 0.0;
  bool has_best = false;
  DiscreteDistribution best_distribution;
  std::int64_t evaluated = 0;
  std::int64_t singular = 0;
  std::int64_t infeasible = 0;
  std::int64_t undefined = 0;
  std::vector<Violation> violations;
  std::size_t violation_count = 0;
};

}  // namespace

const char* to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::CondExp: return "cond-exp";
    case ObjectiveKind::Tail: return "tail";
    case ObjectiveKind::MaxOp: return "max-op";
    case ObjectiveKind::PricingRatio: return "pricing-ratio";
  }
  return "unknown";
}

void DiscreteDistribution::check() const {
  if (support.size() != weights.size() || support.empty()) {
    throw DomainError("distribution needs matching, non-empty support and weights");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) throw DomainError("distribution has a negative weight");
    if (i > 0 && !(support[i] > support[i - 1])) {
      throw DomainError("distribution support is not strictly ascending");
    }
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "distribution weights sum to " << total;
    throw DomainError(os.str());
  }
}

std::optional<double> evaluate_objective(const DiscreteDistribution& dist, const Objective& obj) {
  const double t = obj.t;
  switch (obj.kind) {
    case ObjectiveKind::CondExp: {
      double mass = 0.0;
      double first = 0.0;
      for (std::size_t i = 0; i < dist.support.size(); ++i) {
        if (dist.support[i] >= t) {
          mass += dist.weights[i];
          first += dist.weights[i] * dist.support[i];
        }
      }
      if (!(mass > 0.0)) return std::nullopt;
      return first / mass;
    }
    case ObjectiveKind::Tail: {
      double mass = 0.0;
      for (std::size_t i = 0; i < dist.support.size(); ++i) {
        if (dist.support[i] >= t) mass += dist.weights[i];
      }
      return mass;
    }
    case ObjectiveKind::MaxOp: {
      double acc = 0.0;
      for (std::size_t i = 0; i < dist.support.size(); ++i) {
        acc += dist.weights[i] * std::max(dist.support[i] - t, 0.0);
      }
      return acc;
    }
    case ObjectiveKind::PricingRatio: {
      // With a discrete valuation the best posted price sits on an atom.
      double opt = 0.0;
      double above = 0.0;
      double rev_mass = 0.0;
      for (std::size_t i = dist.support.size(); i-- > 0;) {
        above += dist.weights[i];
        if (dist.support[i] > 0.0) opt = std::max(opt, dist.support[i] * above);
        if (dist.support[i] >= t) rev_mass = above;
      }
      const double rev = t * rev_mass;
      if (!(rev > 0.0)) return std::nullopt;
      return opt / rev;
    }
  }
  return std::nullopt;
}

double reference_bound(const DispersionSpec& spec, const Objective& obj) {
  switch (obj.kind) {
    case ObjectiveKind::CondExp: return cond_expectation_sup(spec, obj.t).value;
    case ObjectiveKind::Tail: return tail_inf(spec, obj.t).value;
    case ObjectiveKind::MaxOp: return max_operator_sup(spec, obj.t).value;
    case ObjectiveKind::PricingRatio: {
      const double r = obj.t;
      if (!(r > 0.0 && r < spec.mu())) throw DomainError("pricing reference needs 0 < price < mu");
      const double v2 = cond_expectation_sup(spec, r).value;
      if (!std::isfinite(v2)) return kInf;
      const double w2 = (spec.mu() - r) / (v2 - r);
      return std::max(1.0 / w2, v2 / r);
    }
  }
  return 0.0;
}

OracleReport sweep_two_point(const DispersionSpec& spec, const Objective& obj, int grid_size) {
  if (grid_size < 10) throw DomainError("sweep_two_point needs grid_size >= 10");
  const double mu = spec.mu();

  OracleReport rep;
  rep.best_objective = worst_value(obj);
  for (double v1 : sweep_grid(spec, obj.t, grid_size)) {
    const auto v2 = oracle_v2(spec, v1);
    if (!v2) continue;
    DiscreteDistribution dist;
    dist.support = {v1, *v2};
    const double w2 = (mu - v1) / (*v2 - v1);
    dist.weights = {1.0 - w2, w2};
    const auto value = evaluate_objective(dist, obj);
    if (!value) continue;
    ++rep.samples_evaluated;
    if (rep.samples_evaluated == 1 || better(obj, *value, rep.best_objective)) {
      rep.best_objective = *value;
      rep.best_distribution = dist;
    }
  }
  rep.reference = reference_bound(spec, obj);
  return rep;
}

OracleReport sample_three_point(const DispersionSpec& spec, const Objective& obj,
                                std::int64_t n_samples, std::uint64_t seed,
                                const SampleOptions& options) {
  if (n_samples < 1) throw DomainError("sample_three_point needs n_samples >= 1");
  const double mu = spec.mu();
  const double G = 50.0 * spec.level();
  const double target = spec.target();
  const double reference = options.reference ? *options.reference : reference_bound(spec, obj);
  const double tol = options.tolerance;

  constexpr std::int64_t kChunk = 4096;
  const auto n_chunks = static_cast<std::size_t>((n_samples + kChunk - 1) / kChunk);
  std::vector<ChunkResult> chunks(n_chunks);

  parallel_for(n_chunks, options.threads, [&](std::size_t c) {
    ChunkResult& out = chunks[c];
    std::seed_seq sseq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(sseq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::int64_t begin = static_cast<std::int64_t>(c) * kChunk;
    const std::int64_t end = std::min(n_samples, begin + kChunk);
    out.best = worst_value(obj);

    for (std::int64_t k = begin; k < end; ++k) {
      const double x1 = mu - G * unit(rng);
      const double x3 = mu + G * unit(rng);
      const double x2 = x1 + (x3 - x1) * unit(rng);
      if (!(x1 < x2 && x2 < x3 && x1 < mu && mu < x3)) {
        ++out.singular;
        continue;
      }
      // Centred coordinates keep the mean row well scaled.
      std::array<std::array<double, 3>, 3> a{{{1.0, 1.0, 1.0},
                                              {x1 - mu, x2 - mu, x3 - mu},
                                              {spec.phi(x1), spec.phi(x2), spec.phi(x3)}}};
      std::array<double, 3> w{};
      if (!solve3(a, {1.0, 0.0, target}, w)) {
        ++out.singular;
        continue;
      }
      if (!(w[0] >= 0.0 && w[1] >= 0.0 && w[2] >= 0.0)) {
        ++out.infeasible;
        continue;
      }
      DiscreteDistribution dist;
      dist.support = {x1, x2, x3};
      const double total = w[0] + w[1] + w[2];
      dist.weights = {w[0] / total, w[1] / total, w[2] / total};
      const auto value = evaluate_objective(dist, obj);
      if (!value) {
        ++out.undefined;
        continue;
      }
      ++out.evaluated;
      if (!out.has_best || better(obj, *value, out.best)) {
        out.best = *value;
        out.best_distribution = dist;
        out.has_best = true;
      }
      const bool violates = obj.maximize() ? *value > reference + tol : *value < reference - tol;
      if (violates) {
        ++out.violation_count;
        if (out.violations.size() < options.max_recorded_violations) {
          out.violations.push_back({dist, *value});
        }
      }
    }
  });

  OracleReport rep;
  rep.reference = reference;
  rep.best_objective = worst_value(obj);
  bool has_best = false;
  for (auto& ch : chunks) {
    rep.samples_evaluated += ch.evaluated;
    rep.samples_singular += ch.singular;
    rep.samples_infeasible += ch.infeasible;
    rep.samples_undefined += ch.undefined;
    rep.violation_count += static_cast<std::int64_t>(ch.violation_count);
    if (ch.has_best && (!has_best || better(obj, ch.best, rep.best_objective))) {
      rep.best_objective = ch.best;
      rep.best_distribution = ch.best_distribution;
      has_best = true;
    }
    for (auto& v : ch.violations) {
      if (rep.bound_violations.size() < options.max_recorded_violations) {
        rep.bound_violations.push_back(std::move(v));
      }
    }
  }
  return rep;
}

}  // namespace tightbounds::oracle
