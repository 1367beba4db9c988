#pragma once

#include <cstdint>
#include <vector>

#include "altweib/mle.hpp"
#include "altweib/weibull.hpp"

namespace altweib {

/// Anderson-Darling test outcome for a fitted two-parameter Weibull.
struct AdResult {
  double statistic;  ///< A-squared
  double p_value;    ///< parametric-bootstrap tail fraction, in [0,1]
  WeibullParams fitted;
  int bootstrap_reps;

  bool reject_at(double level) const { return p_value < level; }
};

/// A^2 = -n - (1/n) sum (2i-1) [ln F(x_(i)) + ln(1 - F(x_(n+1-i)))] under the
/// fitted CDF, with distribution values clamped away from {0,1} by 1e-15
/// before the logs. Requires sorted data, n >= 3.
double ad_statistic(const std::vector<double>& sorted_data, const WeibullParams& p);

/// Complete-sample ML fit (all-failures case with zero removals) of the data.
FitResult fit_complete(const std::vector<double>& data);

/// Fit the data, compute A^2, and bootstrap its null distribution: each
/// replicate draws n values from the fitted law, refits, and recomputes A^2
/// under its own refit; p is the fraction of replicates whose A^2 exceeds
/// the observed one. Deterministic in (data, reps, seed).
AdResult ad_test(const std::vector<double>& data, int bootstrap_reps,
                 std::uint64_t seed);

}  // namespace altweib
