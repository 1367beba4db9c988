#include "altweib/twostep.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace altweib {
namespace {

using DesignMatrix = Eigen::Matrix<double, Eigen::Dynamic, 3>;

DesignMatrix to_eigen(const std::vector<std::array<double, 3>>& design) {
  DesignMatrix X(design.size(), 3);
  for (std::size_t i = 0; i < design.size(); ++i)
    X.row(i) << design[i][0], design[i][1], design[i][2];
  return X;
}

std::array<double, 9> to_array(const Eigen::Matrix3d& M) {
  std::array<double, 9> out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out[3 * r + c] = M(r, c);
  return out;
}

Eigen::Matrix3d from_array(const std::array<double, 9>& a) {
  Eigen::Matrix3d M;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) M(r, c) = a[3 * r + c];
  return M;
}

// (X'X)^{-1} assembled from the column-pivoted QR of X itself, so no
// normal-equation matrix is ever formed or inverted.
Eigen::Matrix3d xtx_inverse_from_qr(const Eigen::ColPivHouseholderQR<DesignMatrix>& qr) {
  const Eigen::Matrix3d R =
      qr.matrixR().topRows(3).template triangularView<Eigen::Upper>();
  const Eigen::Matrix3d Rinv =
      R.triangularView<Eigen::Upper>().solve(Eigen::Matrix3d::Identity());
  const Eigen::Matrix3d P = qr.colsPermutation();
  return P * (Rinv * Rinv.transpose()) * P.transpose();
}

double condition_number(const DesignMatrix& X) {
  const Eigen::JacobiSVD<DesignMatrix> svd(X);
  const auto& sv = svd.singularValues();
  return sv(0) / sv(sv.size() - 1);
}

RegressionResult stochastic_fit(const std::vector<std::array<double, 3>>& design,
                                const std::vector<double>& response,
                                const std::vector<double>& first_stage_var) {
  const OlsFit base = ols(design, response);
  const std::array<double, 9> cov =
      murphy_topel_cov(design, base.sigma2, first_stage_var);

  RegressionResult out = inference(base.coef, cov);
  out.design_condition = base.condition;
  auto& inf = *out.inference;
  inf.sigma2_resid = base.sigma2;
  std::array<double, 3> se_ols;
  for (int k = 0; k < 3; ++k) se_ols[k] = std::sqrt(base.sigma2 * base.xtx_inv[4 * k]);
  inf.se_ols = se_ols;
  return out;
}

}  // namespace

std::vector<std::array<double, 3>> build_design(const std::vector<StressPoint>& stresses,
                                                RegressorTransform transform) {
  std::vector<std::array<double, 3>> rows;
  rows.reserve(stresses.size());
  for (const auto& s : stresses) {
    if (transform == RegressorTransform::InvTempLogVolt)
      rows.push_back({1.0, 1.0 / s.temperature, std::log(s.voltage)});
    else
      rows.push_back({1.0, s.temperature, s.voltage});
  }
  return rows;
}

OlsFit ols(const std::vector<std::array<double, 3>>& design,
           const std::vector<double>& response) {
  const std::size_t k = design.size();
  if (k != response.size())
    throw std::invalid_argument("ols: design and response lengths differ");
  if (k < 4) throw std::invalid_argument("ols: need at least 4 rows");

  const DesignMatrix X = to_eigen(design);
  const Eigen::Map<const Eigen::VectorXd> y(response.data(), k);

  Eigen::ColPivHouseholderQR<DesignMatrix> qr(X);
  if (qr.rank() < 3) throw std::runtime_error("ols: design matrix is rank deficient");

  const Eigen::Vector3d coef = qr.solve(y);
  const Eigen::VectorXd resid = y - X * coef;
  const double sigma2 = resid.squaredNorm() / static_cast<double>(k - 3);

  OlsFit out;
  out.coef = {coef(0), coef(1), coef(2)};
  out.xtx_inv = to_array(xtx_inverse_from_qr(qr));
  out.sigma2 = sigma2;
  out.condition = condition_number(X);
  out.residuals.assign(resid.data(), resid.data() + k);
  return out;
}

std::array<double, 3> exact_solve(const std::array<std::array<double, 3>, 3>& design,
                                  const std::array<double, 3>& response) {
  Eigen::Matrix3d X;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) X(r, c) = design[r][c];
  const Eigen::Vector3d y(response[0], response[1], response[2]);

  Eigen::FullPivLU<Eigen::Matrix3d> lu(X);
  if (!lu.isInvertible()) throw std::runtime_error("exact_solve: singular design");
  const Eigen::Vector3d coef = lu.solve(y);
  return {coef(0), coef(1), coef(2)};
}

std::array<double, 9> murphy_topel_cov(const std::vector<std::array<double, 3>>& design,
                                       double sigma2,
                                       const std::vector<double>& first_stage_var) {
  const std::size_t k = design.size();
  if (k != first_stage_var.size())
    throw std::invalid_argument("murphy_topel_cov: length mismatch");
  for (double v : first_stage_var)
    if (!(v >= 0.0))
      throw std::invalid_argument("murphy_topel_cov: first-stage variances must be >= 0");

  const DesignMatrix X = to_eigen(design);
  Eigen::ColPivHouseholderQR<DesignMatrix> qr(X);
  if (qr.rank() < 3)
    throw std::runtime_error("murphy_topel_cov: design matrix is rank deficient");
  const Eigen::Matrix3d A = xtx_inverse_from_qr(qr);

  Eigen::Vector3d row;
  Eigen::Matrix3d middle = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < k; ++i) {
    row << X(i, 0), X(i, 1), X(i, 2);
    middle += (sigma2 + first_stage_var[i]) * row * row.transpose();
  }
  return to_array(A * middle * A);
}

RegressionResult inference(const std::array<double, 3>& coef,
                           const std::array<double, 9>& cov) {
  const Eigen::Matrix3d C = from_array(cov);
  RegressionInference inf{};
  for (int kk = 0; kk < 3; ++kk) {
    const double var = C(kk, kk);
    if (!(var >= 0.0))
      throw std::invalid_argument("inference: covariance has a negative diagonal");
    const double se = std::sqrt(var);
    inf.se[kk] = se;
    if (se > 0.0) {
      inf.t_stat[kk] = coef[kk] / se;
      inf.p_value[kk] = std::erfc(std::abs(inf.t_stat[kk]) / std::sqrt(2.0));
    } else {
      inf.t_stat[kk] = std::copysign(std::numeric_limits<double>::infinity(), coef[kk]);
      inf.p_value[kk] = 0.0;
    }
    inf.ci95[kk] = {coef[kk] - 1.96 * se, coef[kk] + 1.96 * se};
  }
  inf.sigma2_resid = 0.0;
  inf.se_ols = std::nullopt;
  return RegressionResult{coef, inf, 0.0};
}

TwoStepResult two_step_rows(const std::vector<std::array<double, 4>>& fit_rows,
                            const std::vector<StressPoint>& stresses,
                            RegressorTransform transform) {
  const std::size_t k = fit_rows.size();
  if (k != stresses.size())
    throw std::invalid_argument("two_step: fits and stresses lengths differ");
  if (k < 3) throw std::invalid_argument("two_step: need at least 3 points");

  if (k == 3) {
    const auto rows = build_design(stresses, transform);
    const std::array<std::array<double, 3>, 3> X{rows[0], rows[1], rows[2]};
    TwoStepResult out{
        RegressionResult{
            exact_solve(X, {fit_rows[0][0], fit_rows[1][0], fit_rows[2][0]}),
            std::nullopt, 0.0},
        RegressionResult{
            exact_solve(X, {fit_rows[0][1], fit_rows[1][1], fit_rows[2][1]}),
            std::nullopt, 0.0}};
    const double cond = condition_number(to_eigen(rows));
    out.shape.design_condition = cond;
    out.scale.design_condition = cond;
    return out;
  }

  const auto design = build_design(stresses, transform);
  std::vector<double> y_shape(k), y_scale(k), v_shape(k), v_scale(k);
  for (std::size_t i = 0; i < k; ++i) {
    y_shape[i] = fit_rows[i][0];
    y_scale[i] = fit_rows[i][1];
    v_shape[i] = fit_rows[i][2] * fit_rows[i][2];
    v_scale[i] = fit_rows[i][3] * fit_rows[i][3];
  }
  return {stochastic_fit(design, y_shape, v_shape),
          stochastic_fit(design, y_scale, v_scale)};
}

TwoStepResult two_step(const std::vector<FitResult>& fits,
                       const std::vector<StressPoint>& stresses,
                       RegressorTransform transform) {
  std::vector<std::array<double, 4>> rows;
  rows.reserve(fits.size());
  for (const auto& f : fits)
    rows.push_back({f.params.alpha, f.params.lambda, f.se_alpha, f.se_lambda});
  return two_step_rows(rows, stresses, transform);
}

}  // namespace altweib
