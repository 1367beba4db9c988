#include <cmath>

#include "altweib/kernels.hpp"

namespace altweib::kernels {

MomentSums scalar(const double* u, const double* w, std::size_t n, double alpha) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = w[i] * std::exp(alpha * u[i]);
    s0 += e;
    s1 += e * u[i];
    s2 += e * u[i] * u[i];
  }
  return {s0, s1, s2};
}

}  // namespace altweib::kernels
