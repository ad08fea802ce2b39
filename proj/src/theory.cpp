// SPDX-License-Identifier: Apache-2.0
#include "chanlab/theory.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "chanlab/episodes.hpp"
#include "chanlab/error.hpp"
#include "chanlab/rng.hpp"

namespace chanlab {

double monte_carlo_margin(std::size_t trials) {
  return 3.0 / std::sqrt(static_cast<double>(trials));
}

std::vector<CantelliCase> default_cantelli_suite() {
  return {{0.0, 1.0, 0.5}, {0.0, 1.0, 1.0}, {0.0, 1.0, 2.0}, {5.0, 2.0, 2.0}, {0.0, 1.0, 1e-3}};
}

std::vector<TheoryCheckResult> check_cantelli(std::span<const CantelliCase> cases,
                                              std::size_t trials, std::uint64_t seed) {
  std::vector<TheoryCheckResult> out;
  const double margin = monte_carlo_margin(trials);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto &c = cases[i];
    const std::uint64_t case_seed = CounterRng::stream_key(seed, i);
    const CantelliSample s = verify_cantelli(c.mu, c.sigma, c.k, trials, case_seed);
    TheoryCheckResult r;
    r.family = "cantelli";
    std::ostringstream name;
    name << "mu=" << c.mu << " sigma=" << c.sigma << " k=" << c.k;
    r.name = name.str();
    r.measured = {{"empirical_tail", s.empirical}};
    r.target = {{"bound", s.bound}};
    r.margin = margin;
    r.trials = trials;
    r.seed = case_seed;
    r.passed = s.empirical <= s.bound + margin;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<LemmaInstance> random_lemma_instances(std::size_t count,
                                                  const std::vector<std::size_t> &dims,
                                                  std::uint64_t seed) {
  if (dims.empty()) throw ConfigError("random_lemma_instances: no dimensions");
  std::vector<LemmaInstance> out;
  CounterRng rng = CounterRng::stream(seed, 0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t d = dims[i % dims.size()];
    LemmaInstance inst;
    for (std::size_t l = 0; l < d; ++l) {
      inst.a.push_back(rng.uniform(0.1, 10.0));
      inst.b.push_back(rng.uniform(0.1, 10.0));
    }
    out.push_back(std::move(inst));
  }
  return out;
}

namespace {

void grid_recurse(std::span<const double> a, std::span<const double> b, std::size_t resolution,
                  std::size_t idx, std::size_t remaining, std::vector<double> &x, double &best) {
  if (idx + 1 == x.size()) {
    x[idx] = static_cast<double>(remaining) / static_cast<double>(resolution);
    best = std::min(best, lemma_objective(a, b, x));
    return;
  }
  for (std::size_t n = 0; n <= remaining; ++n) {
    x[idx] = static_cast<double>(n) / static_cast<double>(resolution);
    grid_recurse(a, b, resolution, idx + 1, remaining - n, x, best);
  }
}

double rel_diff(double x, double y) {
  return std::abs(x - y) / std::max(std::abs(y), std::numeric_limits<double>::min());
}

}  // namespace

double simplex_grid_min(std::span<const double> a, std::span<const double> b,
                        std::size_t resolution) {
  if (a.size() != b.size() || a.empty()) throw DomainError("simplex_grid_min: bad lengths");
  if (resolution == 0) throw DomainError("simplex_grid_min: resolution must be positive");
  std::vector<double> x(a.size());
  double best = std::numeric_limits<double>::infinity();
  grid_recurse(a, b, resolution, 0, resolution, x, best);
  return best;
}

std::vector<TheoryCheckResult> check_lemma_min(std::span<const LemmaInstance> instances,
                                               std::size_t resolution) {
  std::vector<TheoryCheckResult> out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto &inst = instances[i];
    const LemmaMinimum closed = lemma_min(inst.a, inst.b);
    const double grid = simplex_grid_min(inst.a, inst.b, resolution);
    const double at_argmin = lemma_objective(inst.a, inst.b, closed.direction);

    // f(c x) = f(x) at a generic interior point.
    std::vector<double> base = closed.direction;
    for (auto &x : base) x += 0.1;
    const double f_base = lemma_objective(inst.a, inst.b, base);
    double worst_scale = 0.0;
    for (double c : {0.1, 1.0, 10.0}) {
      std::vector<double> scaled = base;
      for (auto &x : scaled) x *= c;
      worst_scale = std::max(worst_scale, rel_diff(lemma_objective(inst.a, inst.b, scaled), f_base));
    }

    TheoryCheckResult r;
    r.family = "lemma_min";
    r.name = "instance " + std::to_string(i) + " (d=" + std::to_string(inst.a.size()) + ")";
    r.measured = {{"grid_min", grid},
                  {"objective_at_argmin", at_argmin},
                  {"scale_invariance_rel_err", worst_scale}};
    r.target = {{"closed_form_min", closed.value}, {"resolution", resolution}};
    r.margin = 0.01;
    const bool grid_ok = grid >= closed.value * (1.0 - 0.01) && grid <= closed.value * (1.0 + 0.01);
    const bool argmin_ok = rel_diff(at_argmin, closed.value) <= 1e-12;
    const bool scale_ok = worst_scale <= 1e-12;
    r.passed = grid_ok && argmin_ok && scale_ok;
    if (!grid_ok) r.note = "grid minimum differs from closed form by more than 1%";
    if (!argmin_ok) r.note = "objective at closed-form argmin differs from closed-form value";
    if (!scale_ok) r.note = "objective is not scale invariant";
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<BinaryTaskStats> random_binary_tasks(std::size_t count, std::size_t max_dim,
                                                 std::uint64_t seed) {
  if (max_dim == 0) throw ConfigError("random_binary_tasks: max_dim must be positive");
  std::vector<BinaryTaskStats> out;
  CounterRng rng = CounterRng::stream(seed, 0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t d = 1 + rng.below(max_dim);
    const bool separated = i % 2 == 1;
    ChannelStats s1{std::vector<double>(d), std::vector<double>(d)};
    ChannelStats s2 = s1;
    for (std::size_t l = 0; l < d; ++l) {
      s1.mu[l] = rng.uniform(0.2, 2.0);
      do {
        s2.mu[l] = rng.uniform(0.2, 2.0);
      } while (std::abs(s2.mu[l] - s1.mu[l]) < 1e-3);
      const double hi = separated ? 0.15 : 0.6;
      s1.sigma[l] = rng.uniform(0.02, hi);
      s2.sigma[l] = rng.uniform(0.02, hi);
    }
    out.emplace_back(std::move(s1), std::move(s2));
  }
  return out;
}

namespace {

MMCVector random_omega(std::size_t d, CounterRng &rng) {
  MMCVector w{std::vector<double>(d), false};
  // log-uniform on [0.01, 100]
  for (auto &x : w.weights) x = std::pow(10.0, rng.uniform(-2.0, 2.0));
  return w;
}

}  // namespace

std::vector<TheoryCheckResult> check_risk_bound(std::span<const BinaryTaskStats> instances,
                                            const RiskBoundOptions &options) {
  std::vector<TheoryCheckResult> out;
  const double margin = monte_carlo_margin(options.trials);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto &stats = instances[i];
    TheoryCheckResult r;
    r.family = "risk_bound";
    r.name = "instance " + std::to_string(i) + " (d=" + std::to_string(stats.dim()) + ")";
    r.margin = margin;
    r.trials = options.trials;
    r.seed = CounterRng::stream_key(options.seed, i);
    try {
      check_bound_assumptions(stats);
    } catch (const PreconditionError &e) {
      r.skipped = true;
      r.passed = true;
      r.note = std::string("skipped: ") + e.what();
      out.push_back(std::move(r));
      continue;
    }

    CounterRng rng = CounterRng::stream(r.seed, 1);
    std::vector<MMCVector> omegas;
    for (std::size_t j = 0; j < options.omegas_per_instance; ++j)
      omegas.push_back(random_omega(stats.dim(), rng));
    const std::vector<double> risks =
        monte_carlo_risk_many(omegas, stats, options.trials, r.seed);

    std::size_t violations = 0;
    double worst_excess = -std::numeric_limits<double>::infinity();
    double min_bound = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < omegas.size(); ++j) {
      const double bound = risk_upper_bound(omegas[j], stats);
      min_bound = std::min(min_bound, bound);
      const double excess = risks[j] - bound;
      worst_excess = std::max(worst_excess, excess);
      if (excess > margin) ++violations;
    }

    const MMCVector oracle = oracle_mmc(stats, OracleConfig::uncapped());
    const double oracle_bound = risk_upper_bound(oracle, stats);
    std::size_t optimality_failures = 0;
    double best_random_bound = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < options.optimality_samples; ++j) {
      const double bound = risk_upper_bound(random_omega(stats.dim(), rng), stats);
      best_random_bound = std::min(best_random_bound, bound);
      if (oracle_bound > bound + 1e-9 * std::max(1.0, bound)) ++optimality_failures;
    }

    std::vector<double> a, b;
    bound_coefficients(stats, a, b);
    const LemmaMinimum lm = lemma_min(a, b);
    const double closed = 8.0 * lm.value;
    const bool closed_ok = rel_diff(oracle_bound, closed) <= 1e-9;

    // The oracle weights squared should point along the lemma argmin.
    double direction_err = 0.0;
    {
      double norm = 0.0;
      for (double w : oracle.weights) norm += w * w;
      for (std::size_t l = 0; l < stats.dim(); ++l)
        direction_err =
            std::max(direction_err, std::abs(oracle.weights[l] * oracle.weights[l] / norm -
                                             lm.direction[l]));
    }
    const bool direction_ok = direction_err <= 1e-9;

    r.measured = {{"mc_bound_violations", violations},
                  {"worst_mc_minus_bound", worst_excess},
                  {"min_bound_over_mc_omegas", min_bound},
                  {"oracle_bound", oracle_bound},
                  {"best_random_bound", best_random_bound},
                  {"optimality_failures", optimality_failures},
                  {"oracle_direction_error", direction_err}};
    r.target = {{"closed_form_bound", closed},
                {"omegas", options.omegas_per_instance},
                {"optimality_samples", options.optimality_samples}};
    r.passed = violations == 0 && optimality_failures == 0 && closed_ok && direction_ok;
    if (violations) r.note = "Monte Carlo risk exceeded the bound";
    else if (optimality_failures) r.note = "a random omega beat the oracle bound";
    else if (!closed_ok) r.note = "oracle bound differs from closed-form minimum";
    else if (!direction_ok) r.note = "oracle direction differs from lemma argmin";
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TheoryCheckResult> run_theory_suite(const TheorySuiteConfig &cfg) {
  std::vector<TheoryCheckResult> all;
  if (cfg.cantelli) {
    const auto cases = default_cantelli_suite();
    auto r = check_cantelli(cases, cfg.trials, CounterRng::stream_key(cfg.seed, 100));
    all.insert(all.end(), r.begin(), r.end());
  }
  if (cfg.lemma_min) {
    const auto inst = random_lemma_instances(50, {1, 2, 3}, CounterRng::stream_key(cfg.seed, 200));
    auto r = check_lemma_min(inst, 200);
    all.insert(all.end(), r.begin(), r.end());
  }
  if (cfg.risk_bound) {
    const auto tasks = random_binary_tasks(20, 8, CounterRng::stream_key(cfg.seed, 300));
    RiskBoundOptions opts;
    opts.trials = cfg.trials;
    opts.seed = CounterRng::stream_key(cfg.seed, 301);
    auto r = check_risk_bound(tasks, opts);
    all.insert(all.end(), r.begin(), r.end());
  }
  return all;
}

nlohmann::json theory_report_json(const std::vector<TheoryCheckResult> &results) {
  nlohmann::json checks = nlohmann::json::array();
  bool all_passed = true;
  for (const auto &r : results) {
    all_passed = all_passed && r.passed;
    checks.push_back({{"family", r.family},
                      {"name", r.name},
                      {"passed", r.passed},
                      {"skipped", r.skipped},
                      {"measured", r.measured},
                      {"target", r.target},
                      {"margin", r.margin},
                      {"trials", r.trials},
                      {"seed", r.seed},
                      {"note", r.note}});
  }
  return {{"checks", checks}, {"all_passed", all_passed}, {"count", results.size()}};
}

std::string theory_report_table(const std::vector<TheoryCheckResult> &results) {
  std::ostringstream os;
  os << std::left << std::setw(12) << "family" << std::setw(36) << "check" << std::setw(6)
     << "ok" << "detail\n";
  for (const auto &r : results) {
    os << std::setw(12) << r.family << std::setw(36) << r.name << std::setw(6)
       << (r.skipped ? "skip" : (r.passed ? "PASS" : "FAIL"));
    if (r.family == "cantelli") {
      os << std::setprecision(5) << "tail=" << r.measured.value("empirical_tail", 0.0)
         << " bound=" << r.target.value("bound", 0.0);
    } else if (r.family == "lemma_min") {
      os << std::setprecision(6) << "grid=" << r.measured.value("grid_min", 0.0)
         << " closed=" << r.target.value("closed_form_min", 0.0);
    } else if (!r.skipped) {
      os << std::setprecision(6) << "oracle_bound=" << r.measured.value("oracle_bound", 0.0)
         << " violations=" << r.measured.value("mc_bound_violations", 0);
    }
    if (!r.note.empty()) os << "  (" << r.note << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace chanlab
