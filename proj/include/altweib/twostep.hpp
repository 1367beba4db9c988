#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "altweib/mle.hpp"
#include "altweib/weibull.hpp"

namespace altweib {

/// How stress points become regressor rows.
/// InvTempLogVolt builds (1, 1/T, log V) — the basis of the stress
/// translation functions; Raw builds (1, T, V).
enum class RegressorTransform { InvTempLogVolt, Raw };

/// Inference block of a stochastic (k >= 4) regression. `se` carries the
/// corrected standard errors; `se_ols` the uncorrected ones for comparison
/// (the correction can only inflate, never shrink, each component).
struct RegressionInference {
  std::array<double, 3> se;
  std::array<double, 3> t_stat;
  std::array<double, 3> p_value;
  std::array<std::pair<double, double>, 3> ci95;
  double sigma2_resid;
  std::optional<std::array<double, 3>> se_ols;
};

/// Stress-coefficient estimates for one response (shape or scale).
/// Exactly identified fits (3 design rows) carry coefficients only.
struct RegressionResult {
  std::array<double, 3> coef;
  std::optional<RegressionInference> inference;
  double design_condition;
};

struct TwoStepResult {
  RegressionResult shape;
  RegressionResult scale;
};

/// Regressor rows for a set of stress points.
std::vector<std::array<double, 3>> build_design(const std::vector<StressPoint>& stresses,
                                                RegressorTransform transform);

/// Ordinary least squares through an orthogonal (QR) factorization.
struct OlsFit {
  std::array<double, 3> coef;
  std::array<double, 9> xtx_inv;  ///< (X'X)^{-1}, row-major
  double sigma2;                  ///< residual variance, dof = k - 3
  double condition;               ///< 2-norm condition number of the design
  std::vector<double> residuals;
};
OlsFit ols(const std::vector<std::array<double, 3>>& design,
           const std::vector<double>& response);

/// Solve the exactly identified 3x3 system X coef = y (zero residuals).
std::array<double, 3> exact_solve(const std::array<std::array<double, 3>, 3>& design,
                                  const std::array<double, 3>& response);

/// Sandwich covariance (X'X)^{-1} X' D X (X'X)^{-1} with
/// D = diag(sigma2 + first_stage_var_i).  Because the second stage's
/// responses are themselves first-stage estimates, the two-step variance
/// correction collapses to this response-variance inflation; with all
/// first-stage variances zero it reduces to the classical OLS covariance.
std::array<double, 9> murphy_topel_cov(const std::vector<std::array<double, 3>>& design,
                                       double sigma2,
                                       const std::vector<double>& first_stage_var);

/// Wald inference from a coefficient triple and covariance: normal-based
/// two-sided p-values and coef +/- 1.96 se intervals. A zero SE yields a
/// signed-infinity t with p = 0.
RegressionResult inference(const std::array<double, 3>& coef,
                           const std::array<double, 9>& cov);

/// The full second stage: regress first-stage shape and scale estimates on
/// the transformed stresses.  Exactly 3 points dispatch to exact_solve with
/// no inference; 4 or more run OLS with the corrected covariance.
TwoStepResult two_step(const std::vector<FitResult>& fits,
                       const std::vector<StressPoint>& stresses,
                       RegressorTransform transform);

/// Row-level overload: each row is (alpha, lambda, se_alpha, se_lambda).
TwoStepResult two_step_rows(const std::vector<std::array<double, 4>>& fit_rows,
                            const std::vector<StressPoint>& stresses,
                            RegressorTransform transform);

}  // namespace altweib
