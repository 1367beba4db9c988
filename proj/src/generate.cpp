#include "altweib/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace altweib {
namespace {

// Ties are measure-zero; if rounding produces one, nudge the later value up
// by one ulp so downstream code can rely on strict increase.
void enforce_strict_increase(std::vector<double>& times) {
  bool warned = false;
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] <= times[i - 1]) {
      times[i] = std::nextafter(times[i - 1],
                                std::numeric_limits<double>::infinity());
      if (!warned) {
        std::fprintf(stderr, "altweib: tie in generated times resolved by ulp nudge\n");
        warned = true;
      }
    }
  }
}

int removals_through(const ProgressiveScheme& scheme, int j) {
  int sum = 0;
  for (int i = 0; i < j; ++i) sum += scheme.removals[i];
  return sum;
}

}  // namespace

std::vector<double> progressive_from_spacings(const std::vector<double>& spacings,
                                              const ProgressiveScheme& scheme,
                                              const WeibullParams& p) {
  if (static_cast<int>(spacings.size()) != scheme.m)
    throw std::invalid_argument("progressive_from_spacings: need exactly m spacings");
  std::vector<double> times(scheme.m);
  double x = 0.0;
  int removed = 0;
  for (int k = 0; k < scheme.m; ++k) {
    const int survivors = scheme.n - removed - k;
    x += spacings[k] / survivors;
    // F^{-1}(1 - e^{-x}) for the Weibull law reduces to lambda * x^(1/alpha).
    times[k] = p.lambda * std::pow(x, 1.0 / p.alpha);
    removed += scheme.removals[k];
  }
  enforce_strict_increase(times);
  return times;
}

std::vector<double> generate_progressive(const ProgressiveScheme& scheme,
                                         const WeibullParams& p, SplitRng& stream) {
  std::vector<double> z(scheme.m);
  for (double& zi : z) zi = stream.exponential();
  return progressive_from_spacings(z, scheme, p);
}

std::vector<double> generate_progressive(const ProgressiveScheme& scheme,
                                         const WeibullParams& p, std::uint64_t seed) {
  SplitRng stream = SplitRng::seeded(seed);
  return generate_progressive(scheme, p, stream);
}

std::pair<int, CaseKind> classify_case(const std::vector<double>& times, double cutoff) {
  const auto it = std::upper_bound(times.begin(), times.end(), cutoff);
  const int j = static_cast<int>(it - times.begin());
  const CaseKind kind =
      (j == static_cast<int>(times.size())) ? CaseKind::CaseI : CaseKind::CaseII;
  return {j, kind};
}

CensoredDataset truncate_phc(const std::vector<double>& full,
                             const ProgressiveScheme& scheme, double cutoff) {
  if (static_cast<int>(full.size()) != scheme.m)
    throw std::invalid_argument("truncate_phc: need the full sample of length m");
  const auto [j, kind] = classify_case(full, cutoff);
  if (kind == CaseKind::CaseI)
    return {full, scheme, Regime::PHC, CaseKind::CaseI, scheme.m, 0};

  const int rj_star = scheme.n - j - removals_through(scheme, j);
  if (rj_star < 0)
    throw std::logic_error("truncate_phc: negative terminal censoring count");
  std::vector<double> kept(full.begin(), full.begin() + j);
  return {std::move(kept), scheme, Regime::PHC, CaseKind::CaseII, j, rj_star};
}

CensoredDataset truncate_phc(const std::vector<double>& full,
                             const ProgressiveScheme& scheme) {
  return truncate_phc(full, scheme, scheme.cutoff);
}

CensoredDataset regenerate_aphc(const std::vector<double>& full, int j,
                                const ProgressiveScheme& scheme,
                                const WeibullParams& p, SplitRng& stream) {
  if (static_cast<int>(full.size()) != scheme.m)
    throw std::invalid_argument("regenerate_aphc: need the full sample of length m");
  if (j < 0 || j >= scheme.m)
    throw std::invalid_argument("regenerate_aphc: requires 0 <= j < m");

  const int need = scheme.m - j - 1;
  const int pool = scheme.n - removals_through(scheme, j) - j - 1;
  if (pool < need)
    throw std::runtime_error("regenerate_aphc: scheme cannot supply enough survivors");

  std::vector<double> times(full.begin(), full.begin() + j + 1);
  times.reserve(scheme.m);
  if (need > 0) {
    const double base = std::exp(p.alpha * (std::log(full[j]) - std::log(p.lambda)));
    std::vector<double> fresh(pool);
    for (double& v : fresh)
      v = p.lambda * std::pow(base + stream.exponential(), 1.0 / p.alpha);
    std::sort(fresh.begin(), fresh.end());
    times.insert(times.end(), fresh.begin(), fresh.begin() + need);
  }
  enforce_strict_increase(times);
  return {std::move(times), scheme, Regime::APHC, CaseKind::CaseII, j, 0};
}

CensoredDataset regenerate_aphc(const std::vector<double>& full, int j,
                                const ProgressiveScheme& scheme,
                                const WeibullParams& p, std::uint64_t seed) {
  SplitRng stream = SplitRng::seeded(seed);
  return regenerate_aphc(full, j, scheme, p, stream);
}

}  // namespace altweib
