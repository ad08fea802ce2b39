// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "chanlab/classify.hpp"
#include "chanlab/error.hpp"
#include "chanlab/oracle.hpp"
#include "chanlab/rng.hpp"
#include "chanlab/theory.hpp"
#include "helpers.hpp"

using namespace chanlab;
using doctest::Approx;

namespace {

BinaryTaskStats stats2(std::vector<double> m1, std::vector<double> m2, std::vector<double> s1,
                       std::vector<double> s2) {
  return BinaryTaskStats({std::move(m1), std::move(s1)}, {std::move(m2), std::move(s2)});
}

}  // namespace

TEST_CASE("class_stats") {
  std::vector<FeatureVector> one{{1, 3}};
  auto s = class_stats(one);
  CHECK(s.mu == std::vector<double>{1, 3});
  CHECK(s.sigma == std::vector<double>{0, 0});

  std::vector<FeatureVector> two{{0, 0}, {2, 0}};
  s = class_stats(two);
  CHECK(s.mu == std::vector<double>{1, 0});
  CHECK(s.sigma == std::vector<double>{1, 0});

  CounterRng rng(3);
  std::vector<FeatureVector> draws;
  for (int i = 0; i < 1000; ++i) draws.push_back({rng.normal(2.0, 0.5), rng.normal(10.0, 3.0)});
  s = class_stats(draws);
  CHECK(s.mu[0] == Approx(2.0).epsilon(0.05));
  CHECK(s.mu[1] == Approx(10.0).epsilon(0.05));
  CHECK(s.sigma[0] == Approx(0.5).epsilon(0.05));
  CHECK(s.sigma[1] == Approx(3.0).epsilon(0.05));

  CHECK_THROWS_AS(class_stats(std::vector<FeatureVector>{}), DomainError);
}

TEST_CASE("original MMC") {
  CHECK(original_mmc(stats2({1, 2}, {3, 4}, {0, 0}, {0, 0})).weights == std::vector<double>{2, 3});
  CHECK(original_mmc(stats2({1, 1}, {1, 1}, {0, 0}, {0, 0})).weights == std::vector<double>{1, 1});
  CHECK(original_mmc(stats2({0, 1}, {0, 1}, {0, 0}, {0, 0}), 1e-8).weights ==
        std::vector<double>{1e-8, 1});
}

TEST_CASE("standardize") {
  const MMCVector o{{2, 3}, false};
  CHECK(standardize({2, 3}, o) == FeatureVector{1, 1});
  const FeatureVector v{0.7, 11.0};
  const auto z = standardize(v, o);
  CHECK(std::abs(z[0] * 2 - v[0]) < 1e-12);
  CHECK(std::abs(z[1] * 3 - v[1]) < 1e-12);

  const auto st = stats2({1, 5}, {3, 1}, {0.1, 0.1}, {0.1, 0.1});
  const auto orig = original_mmc(st);
  const auto m1 = standardize(st.first.mu, orig), m2 = standardize(st.second.mu, orig);
  for (std::size_t l = 0; l < 2; ++l) CHECK((m1[l] + m2[l]) / 2 == Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(standardize({1, 2}, MMCVector{{1, 0}, false}), DomainError);
}

TEST_CASE("oracle MMC weights") {
  const auto st = stats2({1, 1}, {3, 2}, {0.5, 0.1}, {0.5, 0.3});
  const auto w = oracle_mmc(st).weights;
  // raw (2, 2.5) rescaled to sum(omega_o) = 3.5
  CHECK(w[0] == Approx(2.0 * 3.5 / 4.5));
  CHECK(w[1] == Approx(2.5 * 3.5 / 4.5));
  CHECK(w[1] / w[0] == Approx(1.25));

  const auto sym = oracle_mmc(stats2({1, 1, 1}, {2, 2, 2}, {0.3, 0.3, 0.3}, {0.2, 0.2, 0.2}));
  CHECK(sym.weights[0] == Approx(sym.weights[1]));
  CHECK(sym.weights[1] == Approx(sym.weights[2]));
}

TEST_CASE("oracle alpha cap resets extreme channels") {
  // channel 0: delta mu 1, sigma sum 1e-6, omega_o 0.01
  const auto st = stats2({-0.49, 1}, {0.51, 2}, {5e-7, 0.5}, {5e-7, 0.5});
  const auto capped = oracle_mmc(st, OracleConfig{});
  CHECK(capped.weights[0] == Approx(0.01));
  const auto uncapped = oracle_mmc(st, OracleConfig::uncapped());
  CHECK(uncapped.weights[0] > 1.0);
}

TEST_CASE("oracle degenerate channels keep their original MMC") {
  const auto st = stats2({1, 2, 4}, {1, 3, 4}, {0.1, 0.2, 0}, {0.1, 0.2, 0});
  const auto w = oracle_mmc(st).weights;
  CHECK(w[0] == Approx(1.0));  // equal means
  CHECK(w[2] == Approx(4.0));  // zero spread
  CHECK(w[1] == Approx(2.5));  // sole scaled channel matches its own omega_o sum
}

TEST_CASE("apply_oracle") {
  const MMCVector o{{2, 3}, false};
  CHECK(apply_oracle({2, 3}, {{1, 2}, false}, o) == FeatureVector{1, 2});
  const FeatureVector v{0.3, 7.0};
  const auto same = apply_oracle(v, o, o);
  CHECK(std::abs(same[0] - v[0]) < 1e-12);
  CHECK(std::abs(same[1] - v[1]) < 1e-12);
  CHECK(apply_oracle(v, {{1, 1}, false}, o) == standardize(v, o));
  CHECK_THROWS_AS(apply_oracle({1}, o, o), DomainError);
}

TEST_CASE("risk upper bound") {
  const auto d1 = stats2({1}, {2}, {0.2}, {0.3});
  CHECK(risk_upper_bound({{0.3}, false}, d1) == Approx(risk_upper_bound({{17.0}, false}, d1)));

  const auto st = stats2({1, 0.5, 2}, {2, 0.7, 1}, {0.2, 0.1, 0.4}, {0.3, 0.05, 0.2});
  const MMCVector w{{0.2, 1.7, 0.9}, false};
  const double base = risk_upper_bound(w, st);
  for (double c : {1e-3, 0.5, 7.0, 1e4}) {
    MMCVector cw = w;
    for (auto &x : cw.weights) x *= c;
    CHECK(test::rel_close(risk_upper_bound(cw, st), base, 1e-12));
  }

  std::vector<double> a, b;
  bound_coefficients(st, a, b);
  double s = 0;
  for (std::size_t l = 0; l < a.size(); ++l) s += a[l] * a[l] / b[l];
  const double at_oracle = risk_upper_bound(oracle_mmc(st, OracleConfig::uncapped()), st);
  CHECK(test::rel_close(at_oracle, 8.0 / s, 1e-9));

  CHECK_THROWS_AS(risk_upper_bound(w, stats2({1, 1, 2}, {2, 1, 2}, {0.1, 0.1, 0}, {0.1, 0.1, 0})),
                  PreconditionError);
  try {
    check_bound_assumptions(stats2({1, 1, 2}, {2, 1, 2}, {0.1, 0.1, 0}, {0.1, 0.1, 0}));
  } catch (const PreconditionError &e) {
    const std::string msg = e.what();
    CHECK(msg.find('1') != std::string::npos);
    CHECK(msg.find('2') != std::string::npos);
  }
  CHECK_THROWS_AS(risk_upper_bound({{0, 0, 0}, false}, st), DomainError);
}

TEST_CASE("oracle minimises the bound over random weights") {
  const auto tasks = random_binary_tasks(10, 8, 21);
  CounterRng rng(77);
  for (const auto &st : tasks) {
    const double best = risk_upper_bound(oracle_mmc(st, OracleConfig::uncapped()), st);
    for (int i = 0; i < 200; ++i) {
      MMCVector w{std::vector<double>(st.dim()), false};
      for (auto &x : w.weights) x = std::exp(rng.uniform(-4.6, 4.6));
      CHECK(best <= risk_upper_bound(w, st) + 1e-9 * std::max(1.0, best));
    }
  }
}

TEST_CASE("lemma minimum closed form") {
  const std::vector<double> a1{2}, b1{3};
  auto m = lemma_min(a1, b1);
  CHECK(m.value == Approx(0.75));
  for (double x : {0.1, 1.0, 5.0}) {
    std::vector<double> xs{x};
    CHECK(lemma_objective(a1, b1, xs) == Approx(0.75));
  }

  const std::vector<double> ones{1, 1};
  m = lemma_min(ones, ones);
  CHECK(m.value == Approx(0.5));
  CHECK(m.direction[0] == Approx(0.5));
  CHECK(simplex_grid_min(ones, ones, 200) == Approx(0.5));

  const std::vector<double> a{1, 2};
  m = lemma_min(a, ones);
  CHECK(m.value == Approx(0.2));
  CHECK(m.direction[1] / m.direction[0] == Approx(2.0));
  CHECK(simplex_grid_min(a, ones, 200) == Approx(0.2).epsilon(0.01));

  const std::vector<double> bad{1, 0};
  CHECK_THROWS_AS(lemma_min(a, bad), DomainError);
}

TEST_CASE("weighted NCC") {
  const FeatureVector m1{1, 1}, m2{3, 3};
  const MMCVector ones{{1, 1}, false};
  CHECK(weighted_ncc_predict(m1, m1, m2, ones) == 1);
  CHECK(weighted_ncc_predict({2, 2}, m1, m2, ones) == 2);  // tie
  CounterRng rng(8);
  for (int i = 0; i < 200; ++i) {
    const FeatureVector z{rng.uniform(0, 4), rng.uniform(0, 4)};
    const MMCVector w{{rng.uniform(0.1, 3), rng.uniform(0.1, 3)}, false};
    MMCVector w5 = w;
    for (auto &x : w5.weights) x *= 5.0;
    CHECK(weighted_ncc_predict(z, m1, m2, w) == weighted_ncc_predict(z, m1, m2, w5));
    // all-ones matches plain NCC
    const CentroidModel model{{m1, m2}, {0, 1}};
    const auto plain = ncc_predict(z, model);
    const int weighted = weighted_ncc_predict(z, m1, m2, ones);
    if (plain == 0) CHECK(weighted == 1);
    // zero weight hides channel 1
    const MMCVector mask{{1, 0}, false};
    CHECK(weighted_ncc_predict(z, m1, m2, mask) == weighted_ncc_predict({z[0], -z[1]}, m1, m2, mask));
  }
}
