// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>

#include "chanlab/core.hpp"

namespace chanlab {

inline constexpr double kDefaultK = 1.3;

// Channel-wise transformation family. Every kind maps one channel value to one
// channel value; see apply_scalar for the definitions.
namespace transform {
struct None {};
struct Simple {
  double k = kDefaultK;
};
/// Odd extension of Simple to signed inputs.
struct Extended {
  double k = kDefaultK;
};
/// lambda^k (Tukey ladder of powers).
struct Power {
  double k = kDefaultK;
};
/// ln(a * lambda + 1).
struct Log {
  double a = 1.0;
};
/// Simple below lambda0, then a concave quadratic peaking at x0.
struct Piecewise {
  double k = kDefaultK;
  double lambda0 = 0.02;
  double x0 = 0.05;
};
/// Simple plus a constant r, including at zero.
struct Offset {
  double k = kDefaultK;
  double r = 0.0;
};
}  // namespace transform

using TransformSpec = std::variant<transform::None, transform::Simple, transform::Extended,
                                   transform::Power, transform::Log, transform::Piecewise,
                                   transform::Offset>;

/// Throws ConfigError when hyperparameters violate the kind's constraints.
void validate(const TransformSpec &spec);

/// Short identifier such as "simple(k=1.3)".
std::string describe(const TransformSpec &spec);
nlohmann::json to_json(const TransformSpec &spec);

/// True for kinds that are strictly increasing on [0, inf) and therefore keep
/// the channel ordering of a non-negative vector.
bool strictly_increasing(const TransformSpec &spec);

/// True when the kind accepts negative inputs.
bool accepts_negative(const TransformSpec &spec);

/// phi_k(lambda) = 1 / ln^k(1/lambda + 1), phi_k(0) = 0.
double simple_transform(double lambda, double k = kDefaultK);

/// Analytic phi_k'(lambda) = k ln^{-k-1}(1/lambda + 1) / (lambda (lambda + 1)), lambda > 0.
double simple_derivative(double lambda, double k = kDefaultK);

/// phi_k''(lambda) by central differences of simple_derivative with step
/// min(1e-5, lambda/2).
double simple_second_derivative(double lambda, double k = kDefaultK);

/// sign(lambda) / ln^k(1/|lambda| + 1), 0 at 0.
double extended_transform(double lambda, double k = kDefaultK);

double power_transform(double lambda, double k);

double log_transform(double lambda, double a);

struct PiecewiseCoefficients {
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;
};

/// Quadratic a2 x^2 + a1 x + a0 matching phi_k and phi_k' at lambda0 with its
/// maximum at x0. Requires 0 < lambda0 < x0.
PiecewiseCoefficients piecewise_coefficients(double k, double lambda0, double x0);

double piecewise_transform(double lambda, const PiecewiseCoefficients &coeffs, double k,
                           double lambda0);

double offset_transform(double lambda, double k, double r);

/// Evaluates `spec` on one channel value. Domain violations throw DomainError.
double apply_scalar(const TransformSpec &spec, double lambda);

/// Element-wise application; a domain violation names the offending channel.
FeatureVector apply_channelwise(const FeatureVector &v, const TransformSpec &spec);

/// First lambda in (1e-6, 10) where phi_k'' changes sign from negative to
/// positive, to 1e-9 absolute. k must lie in [0.1, 10]; throws NumericError if
/// phi_k stays concave over the bracket (every k <= 1 does).
double inflection_threshold(double k);

}  // namespace chanlab
