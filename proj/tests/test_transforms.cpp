// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "chanlab/error.hpp"
#include "chanlab/rng.hpp"
#include "chanlab/transforms.hpp"
#include "helpers.hpp"

using namespace chanlab;
using doctest::Approx;

namespace {

std::vector<std::size_t> argsort(const FeatureVector &v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  return idx;
}

}  // namespace

TEST_CASE("simple transform values") {
  CHECK(simple_transform(0.0, 1.3) == 0.0);
  CHECK(simple_transform(0.0, 5.0) == 0.0);
  // high-precision reference 1/ln 2
  CHECK(simple_transform(1.0, 1.0) == Approx(1.442695040888963).epsilon(1e-14));
  CHECK_THROWS_AS(simple_transform(-0.1, 1.3), DomainError);
  CHECK_THROWS_AS(simple_transform(NAN, 1.3), DomainError);
  try {
    simple_transform(-1.0);
  } catch (const DomainError &e) {
    CHECK(std::string(e.what()).find("extended") != std::string::npos);
  }
}

TEST_CASE("simple transform is increasing and steep at the origin") {
  CounterRng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const double k = rng.uniform(0.1, 5.0);
    double a = rng.uniform(1e-6, 20.0), b = rng.uniform(1e-6, 20.0);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    CHECK(simple_transform(a, k) < simple_transform(b, k));
  }
  CHECK(simple_transform(1e-8, 1.3) / 1e-8 > 1e3);
}

TEST_CASE("smoothing below the inflection threshold") {
  const double k = 1.3;
  const double t = inflection_threshold(k);
  CounterRng rng(6);
  for (int i = 0; i < 1000; ++i) {
    double a = rng.uniform(1e-6, t), b = rng.uniform(1e-6, t);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    CHECK(simple_transform(b, k) / simple_transform(a, k) <= b / a * (1 + 1e-12));
  }
}

TEST_CASE("analytic derivative matches finite differences") {
  for (double k : {0.5, 1.3, 3.0}) {
    for (double x : {0.01, 0.1, 0.5, 2.0}) {
      const double h = x * 1e-5;
      const double fd = (simple_transform(x + h, k) - simple_transform(x - h, k)) / (2 * h);
      CHECK(test::rel_close(simple_derivative(x, k), fd, 1e-7));
    }
  }
}

TEST_CASE("extended transform") {
  CHECK(extended_transform(-1.0, 1.0) == Approx(-1.442695040888963).epsilon(1e-14));
  CHECK(extended_transform(0.0, 1.3) == 0.0);
  for (double x : {1e-4, 0.3, 0.5, 7.0}) {
    CHECK(extended_transform(-x, 1.3) == -extended_transform(x, 1.3));
    CHECK(extended_transform(x, 1.3) == simple_transform(x, 1.3));
  }
}

TEST_CASE("power and log transforms") {
  for (double x : {0.0, 0.3, 2.5}) CHECK(power_transform(x, 1.0) == Approx(x));
  CHECK(power_transform(4.0, 0.5) == Approx(2.0));
  CHECK(power_transform(0.25, 0.5) == Approx(0.5));
  CHECK_THROWS_AS(power_transform(-1.0, 0.5), DomainError);

  CHECK(log_transform(0.0, 3.0) == 0.0);
  CHECK(log_transform(1.0, std::exp(1.0) - 1.0) == Approx(1.0));
  for (double a : {0.5, 1.0, 10.0}) {
    const double h = 1e-7;
    CHECK(log_transform(h, a) / h == Approx(a).epsilon(1e-5));
  }
}

TEST_CASE("piecewise coefficients") {
  const auto c = piecewise_coefficients(1.3, 0.02, 0.05);
  // mpmath reference values
  CHECK(c.a2 == Approx(-45.561200653352043).epsilon(1e-9));
  CHECK(c.a1 == Approx(4.5561200653352043).epsilon(1e-9));
  CHECK(c.a0 == Approx(0.095768051740738368).epsilon(1e-9));
  CHECK(std::abs(-c.a1 / (2 * c.a2) - 0.05) < 1e-12);
  CHECK(c.a2 < 0.0);

  const double l0 = 0.02;
  const double q0 = c.a2 * l0 * l0 + c.a1 * l0 + c.a0;
  CHECK(std::abs(q0 - simple_transform(l0, 1.3)) < 1e-12);
  // second-order one-sided differences on each branch
  auto q = [&](double x) { return piecewise_transform(x, c, 1.3, l0); };
  const double h = 1e-6;
  const double right = (-3 * q(l0) + 4 * q(l0 + h) - q(l0 + 2 * h)) / (2 * h);
  const double left = (3 * simple_transform(l0, 1.3) - 4 * q(l0 - h) + q(l0 - 2 * h)) / (2 * h);
  CHECK(test::rel_close(right, simple_derivative(l0, 1.3), 1e-6));
  CHECK(test::rel_close(left, simple_derivative(l0, 1.3), 1e-6));
  CHECK(test::rel_close(simple_derivative(l0, 1.3), 2.7336720392011226, 1e-10));

  CHECK_THROWS_AS(piecewise_coefficients(1.3, 0.05, 0.05), ConfigError);
  CHECK_THROWS_AS(piecewise_coefficients(1.3, 0.06, 0.05), ConfigError);
}

TEST_CASE("piecewise transform branches") {
  const double k = 1.3, l0 = 0.02, x0 = 0.05;
  const auto c = piecewise_coefficients(k, l0, x0);
  CHECK(piecewise_transform(l0 / 2, c, k, l0) == simple_transform(l0 / 2, k));
  CHECK(std::abs(piecewise_transform(l0 + 1e-9, c, k, l0) - piecewise_transform(l0 - 1e-9, c, k, l0)) < 1e-6);
  CHECK(piecewise_transform(0.2, c, k, l0) < piecewise_transform(0.1, c, k, l0));
  CHECK(piecewise_transform(0.06, c, k, l0) < piecewise_transform(0.051, c, k, l0));
}

TEST_CASE("offset transform") {
  CHECK(offset_transform(0.0, 1.3, 0.01) == 0.01);
  for (double x : {1e-3, 0.2, 3.0}) {
    CHECK(offset_transform(x, 1.3, 0.0) == simple_transform(x, 1.3));
    CHECK(offset_transform(x, 1.3, 0.25) - simple_transform(x, 1.3) == Approx(0.25));
  }
}

TEST_CASE("transform spec validation and dispatch") {
  CHECK_THROWS_AS(validate(transform::Simple{0.0}), ConfigError);
  CHECK_THROWS_AS(validate(transform::Log{-1.0}), ConfigError);
  CHECK_THROWS_AS(validate(transform::Offset{1.3, -0.1}), ConfigError);
  CHECK_THROWS_AS(validate(transform::Piecewise{1.3, 0.1, 0.05}), ConfigError);
  CHECK_NOTHROW(validate(transform::None{}));
  CHECK(apply_scalar(transform::None{}, -2.0) == -2.0);
  CHECK(apply_scalar(transform::Power{2.0}, 3.0) == Approx(9.0));
  CHECK(accepts_negative(transform::Extended{}));
  CHECK_FALSE(accepts_negative(transform::Simple{}));
  CHECK_FALSE(strictly_increasing(transform::Piecewise{}));
}

TEST_CASE("apply_channelwise") {
  const FeatureVector v{0.1, 0.2};
  CHECK(apply_channelwise(v, transform::None{}) == v);
  const auto out = apply_channelwise(v, transform::Simple{1.0});
  CHECK(out[0] == Approx(0.41703239142424633).epsilon(1e-13));
  CHECK(out[1] == Approx(0.55811062655124725).epsilon(1e-13));

  try {
    apply_channelwise({0.3, -0.2, 0.1}, transform::Simple{});
    FAIL("expected a domain error");
  } catch (const DomainError &e) {
    CHECK(std::string(e.what()).find("channel 1") != std::string::npos);
  }

  CounterRng rng(9);
  const std::vector<TransformSpec> specs{transform::Simple{1.3}, transform::Power{0.5},
                                         transform::Log{2.0}, transform::Offset{1.3, 0.01},
                                         transform::Extended{0.8}};
  for (int trial = 0; trial < 50; ++trial) {
    FeatureVector x(16);
    for (auto &e : x) e = rng.uniform(0.0, 3.0);
    for (const auto &s : specs) CHECK(argsort(apply_channelwise(x, s)) == argsort(x));
  }
}

TEST_CASE("inflection threshold") {
  const double t = inflection_threshold(1.3);
  // mpmath root of phi'' for k = 1.3
  CHECK(std::abs(t - 0.3443735595032) < 1e-6);
  CHECK(std::abs(t - 0.344) <= 0.001);
  CHECK(simple_second_derivative(t / 2, 1.3) < 0.0);
  CHECK(simple_second_derivative(t * 0.99, 1.3) < 0.0);
  CHECK(simple_second_derivative(t * 1.01, 1.3) > 0.0);

  CHECK(std::abs(inflection_threshold(2.0) - 0.08237072727609) < 1e-6);
  CHECK(std::abs(inflection_threshold(3.0) - 0.02219101688042) < 1e-6);
  CHECK(std::abs(inflection_threshold(5.0) - 0.00256229958522) < 1e-6);

  CHECK_THROWS_AS(inflection_threshold(0.05), DomainError);
  CHECK_THROWS_AS(inflection_threshold(11.0), DomainError);
}

TEST_CASE("no inflection for k <= 1 confirmed by a dense grid scan") {
  for (double k : {0.5, 1.0}) {
    int sign_changes = 0;
    double prev = simple_second_derivative(1e-6, k);
    for (int i = 1; i <= 20000; ++i) {
      const double x = 1e-6 * std::pow(1e7, i / 20000.0);
      const double cur = simple_second_derivative(x, k);
      if ((prev < 0) != (cur < 0)) ++sign_changes;
      prev = cur;
    }
    CHECK(sign_changes == 0);
    CHECK_THROWS_AS(inflection_threshold(k), NumericError);
  }
  // the same scan brackets the bisection root when one exists
  for (double k : {1.3, 2.0}) {
    const double t = inflection_threshold(k);
    double lo = 0.0, hi = 0.0, prev_x = 1e-6;
    double prev = simple_second_derivative(prev_x, k);
    for (int i = 1; i <= 20000 && hi == 0.0; ++i) {
      const double x = 1e-6 * std::pow(1e7, i / 20000.0);
      const double cur = simple_second_derivative(x, k);
      if (prev < 0 && cur >= 0) {
        lo = prev_x;
        hi = x;
      }
      prev = cur;
      prev_x = x;
    }
    CHECK(lo <= t + 1e-9);
    CHECK(t <= hi + 1e-9);
  }
}
