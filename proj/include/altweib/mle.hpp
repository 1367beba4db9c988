#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "altweib/scheme.hpp"
#include "altweib/weibull.hpp"

namespace altweib {

/// Raised when the likelihood has no interior maximum: fewer than two
/// distinct failure times, or a hybrid Case II with zero observed failures.
struct DegenerateDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Maximum-likelihood fit of one censored dataset.
struct FitResult {
  WeibullParams params;
  double se_alpha;
  double se_lambda;
  /// Negative Hessian of the log-likelihood at the estimate, row-major
  /// [d2/alpha2, d2/(alpha,lambda); d2/(alpha,lambda), d2/lambda2].
  std::array<double, 4> observed_info;
  int iterations;
  CaseKind caseKind;
  Regime regime;
  double score_residual;  ///< |score(alpha_hat)| on the solver's scale
};

/// Shape score and its derivative at one alpha, bound to a dataset.
struct ShapeScore {
  double value;
  double derivative;
};
using ScoreFunction = std::function<ShapeScore(double)>;

/// Profiled score for the all-failures-observed case (both regimes):
///   m/alpha + sum log x_i - m * sum (1+R_i) x_i^a log x_i / sum (1+R_i) x_i^a.
double score_case1(double alpha, const std::vector<double>& times,
                   const std::vector<int>& removals);

/// Plug-in scale for the same case: [ (1/m) sum (1+R_i) x_i^a ]^(1/a).
double lambda_case1(double alpha, const std::vector<double>& times,
                    const std::vector<int>& removals);

/// Profiled score when only j of m failures precede the cutoff under the
/// progressive-hybrid rule; the cutoff enters with weight rj_star.
double score_phc2(double alpha, const std::vector<double>& times,
                  const std::vector<int>& removals, double cutoff, int rj_star);

/// Plug-in scale: [ (1/j) (sum (1+R_i) x_i^a + rj_star * cutoff^a) ]^(1/a).
double lambda_phc2(double alpha, const std::vector<double>& times,
                   const std::vector<int>& removals, double cutoff, int rj_star);

/// Profiled score for the adaptive regime with j < m: removals count only
/// through index j, and the n - m - sum_{i<=j} R_i survivors leave at the
/// last failure.
double score_aphc2(double alpha, const std::vector<double>& times,
                   const std::vector<int>& removals, int j, int n);

double lambda_aphc2(double alpha, const std::vector<double>& times,
                    const std::vector<int>& removals, int j, int n);

/// Case-appropriate log-likelihood (up to an additive constant) for a
/// dataset at arbitrary (alpha, lambda); used by grid oracles and the
/// observed-information computation.
double case_loglik(const CensoredDataset& ds, double alpha, double lambda);

/// Safeguarded Newton root of a strictly decreasing score. The initial
/// bracket expands geometrically within [1e-6, 1e6] until the score changes
/// sign; Newton steps fall back to bisection whenever they leave the current
/// bracket, and bisection continues after max_newton Newton iterations.
/// Throws DegenerateDataError when no sign change exists.
double solve_shape(const ScoreFunction& score,
                   std::pair<double, double> bracket_init = {0.05, 50.0},
                   double tol = 1e-10, int max_newton = 25,
                   int* iterations_out = nullptr);

/// Full fit: dispatch on (regime, case), solve for the shape, plug in the
/// scale, and attach standard errors from the observed information (central
/// finite differences of case_loglik, relative step 1e-5).
FitResult fit(const CensoredDataset& ds);

}  // namespace altweib
