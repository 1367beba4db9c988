#pragma once

#include <cmath>
#include <stdexcept>

namespace altweib {

/// Two-parameter Weibull lifetime law.
struct WeibullParams {
  double alpha;   ///< shape, > 0
  double lambda;  ///< scale, > 0 (time units)

  WeibullParams(double shape, double scale) : alpha(shape), lambda(scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
      throw std::invalid_argument("WeibullParams: shape and scale must be positive");
  }
};

/// One test condition: absolute temperature and voltage.
struct StressPoint {
  double temperature;  ///< Kelvin, > 0
  double voltage;      ///< Volts, > 0

  StressPoint(double t, double v) : temperature(t), voltage(v) {
    if (!(t > 0.0) || !(v > 0.0))
      throw std::invalid_argument("StressPoint: temperature and voltage must be positive");
  }
};

/// Coefficients of a stress translation function, linear in (1/T, log V).
/// One instance maps stress to the shape parameter, another to the scale.
struct StressCoefficients {
  double intercept;
  double inv_temp;
  double log_volt;
};

namespace detail {
// (x/lambda)^alpha evaluated through logs so that large shapes cannot
// overflow the direct power.
inline double pow_ratio(double x, const WeibullParams& p) {
  return std::exp(p.alpha * (std::log(x) - std::log(p.lambda)));
}
inline void require_positive_x(double x) {
  if (!(x > 0.0)) throw std::domain_error("weibull: x must be positive");
}
}  // namespace detail

inline double pdf(double x, const WeibullParams& p) {
  detail::require_positive_x(x);
  const double z = detail::pow_ratio(x, p);
  return p.alpha / p.lambda * std::exp((p.alpha - 1.0) * (std::log(x) - std::log(p.lambda))) *
         std::exp(-z);
}

inline double cdf(double x, const WeibullParams& p) {
  detail::require_positive_x(x);
  return -std::expm1(-detail::pow_ratio(x, p));
}

inline double survival(double x, const WeibullParams& p) {
  detail::require_positive_x(x);
  return std::exp(-detail::pow_ratio(x, p));
}

inline double hazard(double x, const WeibullParams& p) {
  detail::require_positive_x(x);
  return p.alpha / p.lambda *
         std::exp((p.alpha - 1.0) * (std::log(x) - std::log(p.lambda)));
}

inline double quantile(double u, const WeibullParams& p) {
  if (!(u > 0.0) || !(u < 1.0))
    throw std::domain_error("weibull: quantile argument must lie in (0,1)");
  return p.lambda * std::pow(-std::log1p(-u), 1.0 / p.alpha);
}

/// Raw linear stress translation value; positivity is the caller's concern
/// (regression code legitimately consumes unconstrained values).
inline double stf_eval(const StressCoefficients& c, const StressPoint& s) {
  return c.intercept + c.inv_temp / s.temperature + c.log_volt * std::log(s.voltage);
}

}  // namespace altweib
