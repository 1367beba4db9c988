#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "altweib/rng.hpp"
#include "altweib/scheme.hpp"
#include "altweib/weibull.hpp"

namespace altweib {

/// Deterministic core of the progressive sampler: turn m standard-exponential
/// spacings z into the m ordered failure times of a progressively Type-II
/// censored Weibull sample.  With survivors(k) = n - sum_{i<k} R_i - (k-1),
///   X_1 = z_1 / survivors(1),  X_k = X_{k-1} + z_k / survivors(k),
/// and the time is the Weibull transform lambda * X_k^(1/alpha).
std::vector<double> progressive_from_spacings(const std::vector<double>& spacings,
                                              const ProgressiveScheme& scheme,
                                              const WeibullParams& p);

/// Draw a full progressively censored sample of length m from the stream.
std::vector<double> generate_progressive(const ProgressiveScheme& scheme,
                                         const WeibullParams& p, SplitRng& stream);

/// Convenience overload seeding a fresh stream.
std::vector<double> generate_progressive(const ProgressiveScheme& scheme,
                                         const WeibullParams& p, std::uint64_t seed);

/// j = number of times at or below the cutoff; CaseI iff every time is.
std::pair<int, CaseKind> classify_case(const std::vector<double>& times, double cutoff);

/// Apply the progressive-hybrid rule: stop at min(last failure, cutoff).
/// Case I keeps all m times; Case II keeps the first j and records the
/// rj_star = n - j - sum_{i<=j} R_i units censored at the cutoff.
CensoredDataset truncate_phc(const std::vector<double>& full,
                             const ProgressiveScheme& scheme, double cutoff);
CensoredDataset truncate_phc(const std::vector<double>& full,
                             const ProgressiveScheme& scheme);

/// Adaptive regime, Case II (j < m): keep the first j+1 failures, then extend
/// with the first m-j-1 order statistics of a sample of size
/// n - sum_{i<=j} R_i - j - 1 drawn from the law left-truncated at the
/// (j+1)-th failure.  Draws use the memoryless form
/// x = lambda * ((t/lambda)^alpha + E)^(1/alpha), E ~ Exp(1), which is the
/// quantile inversion on u in (F(t), 1) in exact arithmetic.
CensoredDataset regenerate_aphc(const std::vector<double>& full, int j,
                                const ProgressiveScheme& scheme,
                                const WeibullParams& p, SplitRng& stream);
CensoredDataset regenerate_aphc(const std::vector<double>& full, int j,
                                const ProgressiveScheme& scheme,
                                const WeibullParams& p, std::uint64_t seed);

}  // namespace altweib
