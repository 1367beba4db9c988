#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "altweib/kernels.hpp"

namespace altweib {
namespace {

using KernelFn = MomentSums (*)(const double*, const double*, std::size_t, double);

struct Selection {
  KernelFn fn;
  const char* name;
};

Selection detect() {
#if defined(ALTWEIB_HAVE_AVX2)
  if (kernels::avx2_available()) return {&kernels::avx2, "avx2"};
#endif
  return {&kernels::scalar, "scalar"};
}

Selection resolve(KernelKind kind) {
  switch (kind) {
    case KernelKind::Scalar:
      return {&kernels::scalar, "scalar"};
    case KernelKind::Avx2:
#if defined(ALTWEIB_HAVE_AVX2)
      if (kernels::avx2_available()) return {&kernels::avx2, "avx2"};
#endif
      throw std::runtime_error("kernels: AVX2 implementation unavailable on this host");
    case KernelKind::Auto:
    default: {
      if (const char* env = std::getenv("ALTWEIB_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return resolve(KernelKind::Scalar);
        if (std::strcmp(env, "avx2") == 0) return resolve(KernelKind::Avx2);
        if (std::strcmp(env, "auto") != 0 && *env != '\0')
          throw std::runtime_error("kernels: unknown ALTWEIB_KERNEL value");
      }
      return detect();
    }
  }
}

std::atomic<const Selection*> g_active{nullptr};

const Selection& active() {
  const Selection* sel = g_active.load(std::memory_order_acquire);
  if (!sel) {
    static Selection initial = resolve(KernelKind::Auto);
    g_active.store(&initial, std::memory_order_release);
    sel = &initial;
  }
  return *sel;
}

}  // namespace

#if !defined(ALTWEIB_HAVE_AVX2)
namespace kernels {
bool avx2_available() { return false; }
MomentSums avx2(const double* u, const double* w, std::size_t n, double alpha) {
  return scalar(u, w, n, alpha);
}
}  // namespace kernels
#endif

MomentSums weighted_power_sums(const double* u, const double* w, std::size_t n,
                               double alpha) {
  return active().fn(u, w, n, alpha);
}

const char* active_kernel_name() { return active().name; }

void force_kernel(KernelKind kind) {
  // Test hook; the small Selection intentionally outlives every caller.
  g_active.store(new Selection(resolve(kind)), std::memory_order_release);
}

}  // namespace altweib
