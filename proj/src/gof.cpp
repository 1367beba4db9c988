#include "altweib/gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "altweib/rng.hpp"

namespace altweib {
namespace {

constexpr double kClamp = 1e-15;

double clamp_unit(double v) {
  return std::min(1.0 - kClamp, std::max(kClamp, v));
}

}  // namespace

double ad_statistic(const std::vector<double>& sorted_data, const WeibullParams& p) {
  const std::size_t n = sorted_data.size();
  if (n < 3) throw std::invalid_argument("ad_statistic: need at least 3 observations");
  if (!std::is_sorted(sorted_data.begin(), sorted_data.end()))
    throw std::invalid_argument("ad_statistic: data must be sorted");

  // 1 - F computed as the survival function directly, sparing the
  // subtraction its cancellation near F = 1; both branches are clamped.
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = clamp_unit(cdf(sorted_data[i], p));
    const double hi = clamp_unit(survival(sorted_data[n - 1 - i], p));
    acc += (2.0 * static_cast<double>(i) + 1.0) * (std::log(lo) + std::log(hi));
  }
  return -static_cast<double>(n) - acc / static_cast<double>(n);
}

FitResult fit_complete(const std::vector<double>& data) {
  if (data.size() < 2) throw std::invalid_argument("fit_complete: need at least 2 values");
  std::vector<double> sorted = data;
  std::sort(sorted.begin(), sorted.end());
  if (!(sorted.front() > 0.0))
    throw std::invalid_argument("fit_complete: values must be positive");

  const int n = static_cast<int>(sorted.size());
  const ProgressiveScheme scheme(n, n, std::vector<int>(n, 0), 2.0 * sorted.back());
  const CensoredDataset ds{std::move(sorted), scheme, Regime::PHC,
                           CaseKind::CaseI,   n,      0};
  return fit(ds);
}

AdResult ad_test(const std::vector<double>& data, int bootstrap_reps,
                 std::uint64_t seed) {
  if (data.size() < 3) throw std::invalid_argument("ad_test: need at least 3 values");
  if (bootstrap_reps < 1)
    throw std::invalid_argument("ad_test: bootstrap_reps must be >= 1");

  const FitResult base = fit_complete(data);
  std::vector<double> sorted = data;
  std::sort(sorted.begin(), sorted.end());
  const double observed = ad_statistic(sorted, base.params);

  const std::size_t n = sorted.size();
  SplitRng root = SplitRng::seeded(seed);
  int exceed = 0;
  std::vector<double> sample(n);
  for (int b = 0; b < bootstrap_reps; ++b) {
    SplitRng stream = root.fork(static_cast<std::uint64_t>(b) + 1);
    for (double& x : sample) x = quantile(stream.uniform(), base.params);
    std::sort(sample.begin(), sample.end());
    const FitResult refit = fit_complete(sample);
    if (ad_statistic(sample, refit.params) > observed) ++exceed;
  }

  return AdResult{observed,
                  static_cast<double>(exceed) / static_cast<double>(bootstrap_reps),
                  base.params, bootstrap_reps};
}

}  // namespace altweib
