#pragma once

#include <cstddef>

namespace altweib {

/// Weighted exponential moment sums
///   s_k = sum_i w[i] * u[i]^k * exp(alpha * u[i]),  k = 0, 1, 2.
///
/// This is the inner loop of every shape-score evaluation: u holds the
/// observation logs shifted by their maximum (so alpha * u <= 0 and the
/// exponentials cannot overflow), w holds the censoring weights.
struct MomentSums {
  double s0;
  double s1;
  double s2;
};

enum class KernelKind { Auto, Scalar, Avx2 };

/// Dispatched entry point. Picks the widest implementation the CPU supports
/// unless overridden by force_kernel() or the ALTWEIB_KERNEL environment
/// variable ("scalar", "avx2", "auto").
MomentSums weighted_power_sums(const double* u, const double* w, std::size_t n,
                               double alpha);

/// Name of the implementation weighted_power_sums currently routes to.
const char* active_kernel_name();

/// Override dispatch; KernelKind::Auto restores CPU detection. Throws
/// std::runtime_error if the requested implementation is unavailable.
void force_kernel(KernelKind kind);

namespace kernels {

/// Portable reference implementation.
MomentSums scalar(const double* u, const double* w, std::size_t n, double alpha);

/// AVX2 implementation; call only if avx2_available().
MomentSums avx2(const double* u, const double* w, std::size_t n, double alpha);

/// True when both the build and the running CPU support the AVX2 kernel.
bool avx2_available();

}  // namespace kernels

}  // namespace altweib
