// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "chanlab/analysis.hpp"
#include "chanlab/classify.hpp"
#include "chanlab/cli.hpp"
#include "chanlab/episodes.hpp"
#include "chanlab/io.hpp"
#include "chanlab/oracle.hpp"
#include "chanlab/rng.hpp"
#include "chanlab/theory.hpp"
#include "chanlab/transforms.hpp"

using namespace chanlab;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;  // <= 0 means no limit
  std::function<Outcome()> run;
};

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// ---------------------------------------------------------------------------

Outcome worked_example() {
  const std::vector<double> x1{0.05, 0.08, 0.87}, y1{0.15, 0.1, 0.75};
  const std::vector<double> x2{0.4, 0.3, 0.3}, y2{0.55, 0.22, 0.23};
  const double n1 = normalized_msd(x1, y1), n2 = normalized_msd(x2, y2);
  const double m1 = msd(x1, y1), m2 = msd(x2, y2);
  const bool ok = std::abs(n1 - 1.36) <= 0.005 && std::abs(n2 - 0.09) <= 0.005 &&
                  std::abs(m1 - 0.008) <= 0.0005 && std::abs(m2 - 0.011) <= 0.0005;
  return {ok, fmt("normalized_msd %.4f / %.4f, msd %.5f / %.5f", n1, n2, m1, m2)};
}

Outcome inflection() {
  const double t = inflection_threshold(1.3);
  // independent log-spaced sign scan of phi'' to bracket the root
  double lo = 0.0, hi = 0.0, prev_x = 1e-6, prev = simple_second_derivative(prev_x, 1.3);
  for (int i = 1; i <= 50000 && hi == 0.0; ++i) {
    const double x = 1e-6 * std::pow(1e7, i / 50000.0);
    const double cur = simple_second_derivative(x, 1.3);
    if (prev < 0.0 && cur >= 0.0) {
      lo = prev_x;
      hi = x;
    }
    prev = cur;
    prev_x = x;
  }
  const bool ok = std::abs(t - 0.344) <= 0.001 && hi > 0.0 && lo <= t && t <= hi;
  return {ok, fmt("t = %.7f, grid bracket [%.7f, %.7f]", t, lo, hi)};
}

Outcome bound_validity() {
  const auto tasks = random_binary_tasks(20, 8, 2024);
  RiskBoundOptions opt;
  opt.omegas_per_instance = 50;
  opt.trials = 100000;
  opt.optimality_samples = 0;
  opt.seed = 11;
  const auto results = check_risk_bound(tasks, opt);
  std::size_t cases = 0, violations = 0, skipped = 0;
  double worst = -1.0;
  for (const auto &r : results) {
    if (r.skipped) {
      ++skipped;
      continue;
    }
    cases += opt.omegas_per_instance;
    violations += r.measured["mc_bound_violations"].get<std::size_t>();
    worst = std::max(worst, r.measured["worst_mc_minus_bound"].get<double>());
  }
  const bool ok = skipped == 0 && cases == 1000 && violations == 0;
  return {ok, fmt("%zu/%zu (task, omega) cases within bound + %.5f; worst risk - bound %.4f; %zu skipped",
                  cases - violations, cases, monte_carlo_margin(opt.trials), worst, skipped)};
}

Outcome oracle_optimality() {
  const auto tasks = random_binary_tasks(20, 8, 2024);
  CounterRng rng(CounterRng::stream_key(5, 0));
  std::size_t beaten = 0, closed_mismatch = 0;
  double worst_rel = 0.0;
  for (const auto &st : tasks) {
    const double best = risk_upper_bound(oracle_mmc(st, OracleConfig::uncapped()), st);
    std::vector<double> a, b;
    bound_coefficients(st, a, b);
    const double closed = 8.0 * lemma_min(a, b).value;
    worst_rel = std::max(worst_rel, rel_diff(best, closed));
    if (rel_diff(best, closed) > 1e-9) ++closed_mismatch;
    for (int i = 0; i < 1000; ++i) {
      MMCVector w{std::vector<double>(st.dim()), false};
      for (auto &x : w.weights) x = std::pow(10.0, rng.uniform(-2.0, 2.0));
      const double bound = risk_upper_bound(w, st);
      if (best > bound + 1e-9 * std::max(1.0, bound)) ++beaten;
    }
  }
  return {beaten == 0 && closed_mismatch == 0,
          fmt("20 tasks x 1000 random omegas: %zu beat the oracle; closed-form max rel diff %.2e",
              beaten, worst_rel)};
}

Outcome lemma_brute_force() {
  const auto instances = random_lemma_instances(50, {2, 3}, 99);
  const auto results = check_lemma_min(instances, 200);
  std::size_t failed = 0;
  double worst = 0.0;
  for (const auto &r : results) {
    if (!r.passed) ++failed;
    worst = std::max(worst, rel_diff(r.measured["grid_min"].get<double>(),
                                     r.target["closed_form_min"].get<double>()));
  }
  return {failed == 0 && results.size() == 50,
          fmt("%zu/50 instances pass; max grid vs closed-form rel diff %.4f%%", results.size() - failed,
              100 * worst)};
}

Outcome cantelli() {
  const std::vector<CantelliCase> cases{{0, 1, 0.5}, {0, 1, 1}, {0, 1, 2}};
  const auto results = check_cantelli(cases, 100000, 7);
  bool ok = true;
  std::ostringstream os;
  for (std::size_t i = 0; i < results.size(); ++i) {
    ok = ok && results[i].passed;
    os << (i ? ", " : "")
       << fmt("k=%.1f tail %.4f <= %.4f", cases[i].k, results[i].measured["empirical_tail"].get<double>(),
              results[i].target["bound"].get<double>());
  }
  return {ok, os.str()};
}

// Synthetic dataset with comparable channel magnitudes, and its biased copy.
struct BiasedPair {
  EmbeddingDataset unbiased;
  EmbeddingDataset biased;
  std::vector<double> inverse_scale;
  double spread;
};

BiasedPair make_biased_pair() {
  const std::size_t classes = 20, dim = 16, per_class = 200;
  SyntheticTaskSpec spec;
  spec.dim = dim;
  CounterRng rng(CounterRng::stream_key(41, 1000));
  for (std::size_t c = 0; c < classes; ++c) {
    ClassGaussian g{"class" + std::to_string(c), std::vector<double>(dim), std::vector<double>(dim)};
    for (std::size_t l = 0; l < dim; ++l) {
      g.mu[l] = rng.uniform(0.25, 0.45);
      g.sigma[l] = 0.06;
    }
    spec.classes.push_back(std::move(g));
  }
  auto unbiased = gen_gaussian_task(spec, per_class, 41);
  const double spread = 10.0;
  const auto bias = BiasInjection::log_uniform(dim, spread, 42);
  auto biased = inject_bias(unbiased, bias);
  std::vector<double> inv(dim);
  for (std::size_t l = 0; l < dim; ++l) inv[l] = 1.0 / bias.scale[l];
  return {std::move(unbiased), std::move(biased), std::move(inv), spread};
}

const BiasedPair &biased_pair() {
  static const BiasedPair pair = make_biased_pair();
  return pair;
}

Outcome channel_bias() {
  const auto &p = biased_pair();
  const EpisodeConfig cfg{5, 5, 15, 1000, 0};
  auto acc = [&](const EmbeddingDataset &d, const EvalTransform &t) {
    return 100.0 * run_evaluation(d, cfg, t).mean_accuracy;
  };
  const double corrected = acc(p.biased, ChannelRescale{p.inverse_scale});
  const double simple = acc(p.biased, TransformSpec{transform::Simple{1.3}});
  const double none = acc(p.biased, TransformSpec{transform::None{}});
  const double u_simple = acc(p.unbiased, TransformSpec{transform::Simple{1.3}});
  const double u_none = acc(p.unbiased, TransformSpec{transform::None{}});
  const bool ok = corrected - simple >= 1.0 && simple - none >= 1.0 && std::abs(u_simple - u_none) <= 1.0;
  return {ok, fmt("biased (spread %.0fx): correction %.2f > simple %.2f > none %.2f; unbiased simple %.2f vs none %.2f",
                  p.spread, corrected, simple, none, u_simple, u_none)};
}

Outcome shot_trend() {
  const auto &p = biased_pair();
  EvalOptions ncc;
  EvalOptions lc;
  lc.classifier = ClassifierKind::Linear;
  lc.linear.learning_rate = 5.0;
  lc.linear.l2_strength = 0.1;
  auto gain = [&](std::size_t shots, const EvalOptions &o) {
    const EpisodeConfig cfg{5, shots, 15, 150, 3};
    const double s = run_evaluation(p.biased, cfg, TransformSpec{transform::Simple{1.3}}, o).mean_accuracy;
    const double n = run_evaluation(p.biased, cfg, TransformSpec{transform::None{}}, o).mean_accuracy;
    return 100.0 * (s - n);
  };
  const double lc5 = gain(5, lc), lc100 = gain(100, lc);
  const double ncc5 = gain(5, ncc), ncc100 = gain(100, ncc);
  const double lc_drop = lc5 - lc100;
  const bool ok = lc100 < lc5 && std::abs(ncc5 - ncc100) < lc_drop / 2.0;
  return {ok, fmt("LC (lr 5, l2 0.1) gain K=5 %+.2f, K=100 %+.2f; NCC gain K=5 %+.2f, K=100 %+.2f",
                  lc5, lc100, ncc5, ncc100)};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "chanlab_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto feats = (dir / "features.bin").string();
  std::ostringstream sink;
  int rc = cli::run({"chanlab", "synth-gen", "--classes", "8", "--dim", "16", "--n-per-class", "60",
                     "--seed", "5", "--bias-spread", "20", "--output", feats},
                    sink, sink);
  bool ok = rc == 0;
  std::size_t compared = 0;
  for (const char *classifier : {"ncc", "lc"}) {
    std::vector<std::string> reports;
    for (const char *threads : {"1", "1", "8"}) {
      const auto out = (dir / (std::string("r") + std::to_string(reports.size()) + ".json")).string();
      rc = cli::run({"chanlab", "evaluate", "--features", feats, "--transform", "simple", "--k", "1.3",
                     "--n-way", "5", "--k-shot", "5", "--m-query", "15", "--episodes",
                     classifier == std::string("lc") ? "40" : "300", "--seed", "0", "--classifier",
                     classifier, "--threads", threads, "--output", out},
                    sink, sink);
      ok = ok && rc == 0;
      reports.push_back(ok ? read_file(out) : std::string());
    }
    ok = ok && reports[0] == reports[1] && reports[0] == reports[2] && !reports[0].empty();
    compared += 3;
  }
  fs::remove_all(dir);
  return {ok, fmt("%zu reports (ncc + lc; runs 1, 2 on 1 thread, run 3 on 8 threads) byte-identical", compared)};
}

Outcome gradient_check() {
  CounterRng rng(CounterRng::stream_key(123, 0));
  double worst = 0.0;
  std::size_t compared = 0;
  for (int inst = 0; inst < 10; ++inst) {
    LabeledGroups groups(3);
    for (auto &g : groups)
      for (int i = 0; i < 6; ++i) {
        FeatureVector v(4);
        for (auto &x : v) x = rng.normal(0.5, 1.0);
        g.push_back(v);
      }
    const auto data = TrainingSet::from_groups(groups);
    std::vector<double> w(12), b(3);
    for (auto &x : w) x = rng.normal(0.0, 0.5);
    for (auto &x : b) x = rng.normal(0.0, 0.5);
    const double l2 = 1.0 / static_cast<double>(data.n);
    const auto obj = linear_objective(data, w, b, l2);
    const double h = 1e-6;
    auto probe = [&](std::vector<double> &param, std::size_t i, double analytic) {
      const double keep = param[i];
      param[i] = keep + h;
      const double up = linear_objective(data, w, b, l2).loss;
      param[i] = keep - h;
      const double down = linear_objective(data, w, b, l2).loss;
      param[i] = keep;
      worst = std::max(worst, rel_diff(analytic, (up - down) / (2 * h)));
      ++compared;
    };
    for (std::size_t i = 0; i < w.size(); ++i) probe(w, i, obj.grad_weights[i]);
    for (std::size_t i = 0; i < b.size(); ++i) probe(b, i, obj.grad_bias[i]);
  }
  return {worst <= 1e-5, fmt("%zu partial derivatives on 10 random 3-class instances, max rel error %.2e",
                             compared, worst)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "distance worked example", 1.0, worked_example},
      {2, "inflection threshold", 1.0, inflection},
      {3, "risk bound validity", 60.0, bound_validity},
      {4, "oracle optimality", 10.0, oracle_optimality},
      {5, "ratio lemma vs brute force", 30.0, lemma_brute_force},
      {6, "Cantelli tails", 5.0, cantelli},
      {7, "channel-bias simulation", 60.0, channel_bias},
      {8, "shot trend LC vs NCC", 300.0, shot_trend},
      {9, "determinism", 0.0, determinism},
      {10, "gradient check", 5.0, gradient_check},
  };
  int failures = 0;
  for (const auto &c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.time_limit_s <= 0.0 || secs < c.time_limit_s;
    const bool passed = o.passed && in_time;
    if (!passed) ++failures;
    std::string timing = fmt("%.2fs", secs);
    if (c.time_limit_s > 0.0) timing += fmt(" < %.0fs", c.time_limit_s);
    if (!in_time) timing += " EXCEEDED";
    std::printf("%s [%2d] %s: %s (%s)\n", passed ? "PASS" : "FAIL", c.id, c.title.c_str(),
                o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
