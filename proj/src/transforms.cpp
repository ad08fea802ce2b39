// SPDX-License-Identifier: Apache-2.0
#include "chanlab/transforms.hpp"

#include <cmath>
#include <sstream>

#include "chanlab/error.hpp"

namespace chanlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_finite(double lambda) {
  if (!std::isfinite(lambda)) throw DomainError("transform input is not finite");
}

void require_non_negative(double lambda, const char *name) {
  require_finite(lambda);
  if (lambda < 0.0)
    throw DomainError(std::string(name) +
                      " is defined on [0, inf) only; use the extended transform for "
                      "signed features");
}

void require_positive(double value, const char *name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw ConfigError(std::string(name) + " must be a positive finite number");
}

}  // namespace

double simple_transform(double lambda, double k) {
  require_non_negative(lambda, "simple transform");
  if (lambda == 0.0) return 0.0;
  return std::pow(std::log1p(1.0 / lambda), -k);
}

double simple_derivative(double lambda, double k) {
  if (!(lambda > 0.0)) throw DomainError("simple_derivative requires lambda > 0");
  const double l = std::log1p(1.0 / lambda);
  return k * std::pow(l, -k - 1.0) / (lambda * (lambda + 1.0));
}

double simple_second_derivative(double lambda, double k) {
  if (!(lambda > 0.0)) throw DomainError("simple_second_derivative requires lambda > 0");
  const double h = std::min(1e-5, 0.5 * lambda);
  return (simple_derivative(lambda + h, k) - simple_derivative(lambda - h, k)) / (2.0 * h);
}

double extended_transform(double lambda, double k) {
  require_finite(lambda);
  if (lambda == 0.0) return 0.0;
  const double mag = std::pow(std::log1p(1.0 / std::abs(lambda)), -k);
  return lambda > 0.0 ? mag : -mag;
}

double power_transform(double lambda, double k) {
  require_non_negative(lambda, "power transform");
  return std::pow(lambda, k);
}

double log_transform(double lambda, double a) {
  require_non_negative(lambda, "log transform");
  return std::log1p(a * lambda);
}

PiecewiseCoefficients piecewise_coefficients(double k, double lambda0, double x0) {
  require_positive(k, "k");
  require_positive(lambda0, "lambda0");
  require_positive(x0, "x0");
  if (!(lambda0 < x0))
    throw ConfigError("piecewise transform requires lambda0 < x0 (got lambda0=" +
                      std::to_string(lambda0) + ", x0=" + std::to_string(x0) + ")");
  PiecewiseCoefficients c;
  c.a2 = simple_derivative(lambda0, k) / (2.0 * (lambda0 - x0));
  c.a1 = -2.0 * c.a2 * x0;
  c.a0 = simple_transform(lambda0, k) - c.a2 * lambda0 * lambda0 - c.a1 * lambda0;
  return c;
}

double piecewise_transform(double lambda, const PiecewiseCoefficients &coeffs, double k,
                           double lambda0) {
  require_non_negative(lambda, "piecewise transform");
  if (lambda < lambda0) return simple_transform(lambda, k);
  return (coeffs.a2 * lambda + coeffs.a1) * lambda + coeffs.a0;
}

double offset_transform(double lambda, double k, double r) {
  return simple_transform(lambda, k) + r;
}

void validate(const TransformSpec &spec) {
  std::visit(overloaded{
                 [](const transform::None &) {},
                 [](const transform::Simple &s) { require_positive(s.k, "k"); },
                 [](const transform::Extended &s) { require_positive(s.k, "k"); },
                 [](const transform::Power &s) { require_positive(s.k, "k"); },
                 [](const transform::Log &s) { require_positive(s.a, "a"); },
                 [](const transform::Piecewise &s) {
                   piecewise_coefficients(s.k, s.lambda0, s.x0);
                 },
                 [](const transform::Offset &s) {
                   require_positive(s.k, "k");
                   if (!(s.r >= 0.0) || !std::isfinite(s.r))
                     throw ConfigError("offset r must be a non-negative finite number");
                 },
             },
             spec);
}

std::string describe(const TransformSpec &spec) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const transform::None &) { os << "none"; },
                 [&](const transform::Simple &s) { os << "simple(k=" << s.k << ")"; },
                 [&](const transform::Extended &s) { os << "extended(k=" << s.k << ")"; },
                 [&](const transform::Power &s) { os << "power(k=" << s.k << ")"; },
                 [&](const transform::Log &s) { os << "log(a=" << s.a << ")"; },
                 [&](const transform::Piecewise &s) {
                   os << "piecewise(k=" << s.k << ",lambda0=" << s.lambda0 << ",x0=" << s.x0
                      << ")";
                 },
                 [&](const transform::Offset &s) {
                   os << "offset(k=" << s.k << ",r=" << s.r << ")";
                 },
             },
             spec);
  return os.str();
}

nlohmann::json to_json(const TransformSpec &spec) {
  return std::visit(
      overloaded{
          [](const transform::None &) { return nlohmann::json{{"kind", "none"}}; },
          [](const transform::Simple &s) { return nlohmann::json{{"kind", "simple"}, {"k", s.k}}; },
          [](const transform::Extended &s) {
            return nlohmann::json{{"kind", "extended"}, {"k", s.k}};
          },
          [](const transform::Power &s) { return nlohmann::json{{"kind", "power"}, {"k", s.k}}; },
          [](const transform::Log &s) { return nlohmann::json{{"kind", "log"}, {"a", s.a}}; },
          [](const transform::Piecewise &s) {
            return nlohmann::json{
                {"kind", "piecewise"}, {"k", s.k}, {"lambda0", s.lambda0}, {"x0", s.x0}};
          },
          [](const transform::Offset &s) {
            return nlohmann::json{{"kind", "offset"}, {"k", s.k}, {"r", s.r}};
          },
      },
      spec);
}

bool strictly_increasing(const TransformSpec &spec) {
  return std::holds_alternative<transform::Simple>(spec) ||
         std::holds_alternative<transform::Extended>(spec) ||
         std::holds_alternative<transform::Power>(spec) ||
         std::holds_alternative<transform::Log>(spec) ||
         std::holds_alternative<transform::Offset>(spec);
}

bool accepts_negative(const TransformSpec &spec) {
  return std::holds_alternative<transform::None>(spec) ||
         std::holds_alternative<transform::Extended>(spec);
}

double apply_scalar(const TransformSpec &spec, double lambda) {
  return std::visit(
      overloaded{
          [&](const transform::None &) {
            require_finite(lambda);
            return lambda;
          },
          [&](const transform::Simple &s) { return simple_transform(lambda, s.k); },
          [&](const transform::Extended &s) { return extended_transform(lambda, s.k); },
          [&](const transform::Power &s) { return power_transform(lambda, s.k); },
          [&](const transform::Log &s) { return log_transform(lambda, s.a); },
          [&](const transform::Piecewise &s) {
            return piecewise_transform(lambda, piecewise_coefficients(s.k, s.lambda0, s.x0),
                                       s.k, s.lambda0);
          },
          [&](const transform::Offset &s) { return offset_transform(lambda, s.k, s.r); },
      },
      spec);
}

FeatureVector apply_channelwise(const FeatureVector &v, const TransformSpec &spec) {
  FeatureVector out(v.size());
  // Piecewise coefficients depend only on the spec; compute them once.
  if (const auto *pw = std::get_if<transform::Piecewise>(&spec)) {
    const auto coeffs = piecewise_coefficients(pw->k, pw->lambda0, pw->x0);
    for (std::size_t l = 0; l < v.size(); ++l) {
      try {
        out[l] = piecewise_transform(v[l], coeffs, pw->k, pw->lambda0);
      } catch (const DomainError &e) {
        throw DomainError("channel " + std::to_string(l) + ": " + e.what());
      }
    }
    return out;
  }
  for (std::size_t l = 0; l < v.size(); ++l) {
    try {
      out[l] = apply_scalar(spec, v[l]);
    } catch (const DomainError &e) {
      throw DomainError("channel " + std::to_string(l) + ": " + e.what());
    }
  }
  return out;
}

double inflection_threshold(double k) {
  if (!(k >= 0.1 && k <= 10.0))
    throw DomainError("inflection_threshold requires k in [0.1, 10]");
  constexpr double lo = 1e-6;
  constexpr double hi = 10.0;
  constexpr int steps = 4000;
  const double ratio = std::pow(hi / lo, 1.0 / steps);

  // Coarse log-spaced scan for the first negative-to-non-negative crossing,
  // then bisection inside that bracket.
  double left = lo;
  double f_left = simple_second_derivative(left, k);
  for (int i = 1; i <= steps; ++i) {
    const double right = (i == steps) ? hi : lo * std::pow(ratio, i);
    const double f_right = simple_second_derivative(right, k);
    if (f_left < 0.0 && f_right >= 0.0) {
      double a = left;
      double b = right;
      while (b - a > 1e-10) {
        const double mid = 0.5 * (a + b);
        if (simple_second_derivative(mid, k) < 0.0)
          a = mid;
        else
          b = mid;
      }
      return 0.5 * (a + b);
    }
    left = right;
    f_left = f_right;
  }
  throw NumericError("phi_k'' has no sign change in (1e-6, 10) for k=" + std::to_string(k));
}

}  // namespace chanlab
