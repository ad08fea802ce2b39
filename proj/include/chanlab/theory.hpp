// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chanlab/core.hpp"
#include "chanlab/oracle.hpp"

namespace chanlab {

/// Outcome of one numerical check of the risk-bound theory.
struct TheoryCheckResult {
  std::string family;  // "cantelli", "lemma_min" or "risk_bound"
  std::string name;
  bool passed = false;
  bool skipped = false;
  nlohmann::json measured = nlohmann::json::object();
  nlohmann::json target = nlohmann::json::object();
  double margin = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string note;
};

/// Allowed excess of a Monte Carlo proportion over its bound: 3 / sqrt(trials).
double monte_carlo_margin(std::size_t trials);

struct CantelliCase {
  double mu = 0.0;
  double sigma = 1.0;
  double k = 1.0;
};

std::vector<CantelliCase> default_cantelli_suite();

/// Each case passes iff the empirical Gaussian tail is at most
/// 1/(1+k^2) + 3/sqrt(trials). Case i uses stream seed stream_key(seed, i).
std::vector<TheoryCheckResult> check_cantelli(std::span<const CantelliCase> cases,
                                              std::size_t trials, std::uint64_t seed);

struct LemmaInstance {
  std::vector<double> a;
  std::vector<double> b;
};

/// Entries of a and b uniform on [0.1, 10]; dimension cycles through `dims`.
std::vector<LemmaInstance> random_lemma_instances(std::size_t count,
                                                  const std::vector<std::size_t> &dims,
                                                  std::uint64_t seed);

/// Minimum of lemma_objective over the simplex grid {x : x_i = n_i / resolution,
/// sum n_i = resolution}.
double simplex_grid_min(std::span<const double> a, std::span<const double> b,
                        std::size_t resolution);

/// Passes iff the grid minimum agrees with the closed form within 1% relative
/// (and is not below it by more than that), f at the closed-form argmin equals
/// the closed-form value within 1e-12 relative, and f(c x) = f(x) for
/// c in {0.1, 1, 10}.
std::vector<TheoryCheckResult> check_lemma_min(std::span<const LemmaInstance> instances,
                                               std::size_t resolution = 200);

/// Random binary tasks with distinct means and positive spread on every
/// channel; dimensions uniform in [1, max_dim]. Every other instance is well
/// separated so its bound is informative (< 1).
std::vector<BinaryTaskStats> random_binary_tasks(std::size_t count, std::size_t max_dim,
                                                 std::uint64_t seed);

struct RiskBoundOptions {
  std::size_t omegas_per_instance = 50;
  std::size_t trials = 100000;
  std::size_t optimality_samples = 1000;
  std::uint64_t seed = 0;
};

/// Per instance: Monte Carlo risk <= bound + 3/sqrt(trials) for every random
/// omega; the uncapped oracle's bound is <= the bound at each of
/// `optimality_samples` random omegas (1e-9 slack) and equals 8 times the
/// closed-form lemma minimum (1e-9 relative); and the oracle direction
/// squared matches the lemma argmin. Instances violating the bound's
/// assumptions are reported as skipped.
std::vector<TheoryCheckResult> check_risk_bound(std::span<const BinaryTaskStats> instances,
                                            const RiskBoundOptions &options);

struct TheorySuiteConfig {
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  bool cantelli = true;
  bool lemma_min = true;
  bool risk_bound = true;
};

/// Default suites: Cantelli cases, 50 lemma instances (d in {1,2,3}), 20
/// binary tasks with d <= 8.
std::vector<TheoryCheckResult> run_theory_suite(const TheorySuiteConfig &cfg);

nlohmann::json theory_report_json(const std::vector<TheoryCheckResult> &results);
std::string theory_report_table(const std::vector<TheoryCheckResult> &results);

}  // namespace chanlab
