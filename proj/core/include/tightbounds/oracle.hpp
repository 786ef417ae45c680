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

#include <cstdint>
#include <optional>
#include <vector>

#include "tightbounds/dispersion.hpp"

namespace tightbounds::oracle {

// Brute-force verification of the bounds. Everything here is computed from
// the definitions (phi, the two moment constraints, the objective) and never
// from the bound solvers.

struct DiscreteDistribution {
  std::vector<double> support;  // strictly ascending
  std::vector<double> weights;

  /// Throws DomainError on mismatched sizes, negative weights, weights not
  /// summing to 1 within 1e-12, or non-ascending support.
  void check() const;
};

enum class ObjectiveKind {
  CondExp,      // E[X | X >= t], maximised
  Tail,         // P(X >= t), minimised
  MaxOp,        // E[max(X - t, 0)], maximised
  PricingRatio  // OPT / REV(t) of a posted price t, maximised
};

struct Objective {
  ObjectiveKind kind;
  double t;

  static Objective cond_exp(double t) { return {ObjectiveKind::CondExp, t}; }
  static Objective tail(double t) { return {ObjectiveKind::Tail, t}; }
  static Objective max_op(double t) { return {ObjectiveKind::MaxOp, t}; }
  static Objective pricing_ratio(double price) { return {ObjectiveKind::PricingRatio, price}; }

  bool maximize() const { return kind != ObjectiveKind::Tail; }
};

const char* to_string(ObjectiveKind kind);

/// Exact finite-sum evaluation; nullopt when the objective is undefined
/// (conditioning on a null event, or zero revenue).
std::optional<double> evaluate_objective(const DiscreteDistribution& dist, const Objective& obj);

struct Violation {
  DiscreteDistribution distribution;
  double objective;
};

struct OracleReport {
  double best_objective = 0.0;
  DiscreteDistribution best_distribution;
  std::int64_t samples_evaluated = 0;  // feasible candidates that were scored
  std::int64_t samples_singular = 0;   // degenerate draws, moment system not solvable
  std::int64_t samples_infeasible = 0; // solvable but some weight negative
  std::int64_t samples_undefined = 0;  // feasible but the objective is undefined
  double reference = 0.0;              // bound the samples were compared with
  std::vector<Violation> bound_violations;  // first few, in sample order
  std::int64_t violation_count = 0;          // all of them
};

/// Scores the feasible two-point family (v1, v2(v1)) on a grid of v1 values
/// below mu (below mu - d/2 for MAD). The grid is uniform over
/// (mu - 50 level, mu) and is refined geometrically toward the objective's
/// breakpoint t, toward the upper end of the family and far into the left
/// tail, where limiting extremal distributions live.
OracleReport sweep_two_point(const DispersionSpec& spec, const Objective& obj, int grid_size);

struct SampleOptions {
  double tolerance = 1e-6;
  unsigned threads = 1;  // 0 = hardware concurrency
  std::optional<double> reference;  // defaults to the matching bound
  std::size_t max_recorded_violations = 16;
};

/// Draws support triples x1 < x2 < x3 spanning mu, solves the 3x3 moment
/// system for the weights and keeps nonnegative solutions. Any sample that
/// beats the reference bound by more than `tolerance` is recorded as a
/// violation. Output is identical for any thread count given the seed.
OracleReport sample_three_point(const DispersionSpec& spec, const Objective& obj,
                                std::int64_t n_samples, std::uint64_t seed,
                                const SampleOptions& options = {});

/// The bound value the oracle compares against, from the bounds module.
double reference_bound(const DispersionSpec& spec, const Objective& obj);

}  // namespace tightbounds::oracle
