#include <immintrin.h>

#include <cstring>

#include "altweib/kernels.hpp"

namespace altweib::kernels {
namespace {

// exp(x) for four doubles. Argument reduction x = n*ln2 + r with a
// Cody-Waite split of ln2, degree-13 Taylor polynomial on |r| <= ln2/2,
// exponent reconstruction through the IEEE-754 bit layout. Inputs below
// -708 flush to zero; inputs are clamped at +709 (callers here never pass
// positive arguments, the clamp is for safety).
inline __m256d exp_pd(__m256d x) {
  const __m256d lo_cut = _mm256_set1_pd(-708.0);
  const __m256d hi_cut = _mm256_set1_pd(709.0);
  const __m256d zero_mask = _mm256_cmp_pd(x, lo_cut, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo_cut), hi_cut);

  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

  __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(n, ln2_hi));
  r = _mm256_sub_pd(r, _mm256_mul_pd(n, ln2_lo));

  // 1/k! for k = 13 .. 2; the trailing (1 + r) is applied afterwards.
  const double coeff[] = {
      1.6059043836821614599e-10,  // 1/13!
      2.0876756987868098979e-09,  // 1/12!
      2.5052108385441718775e-08,  // 1/11!
      2.7557319223985890653e-07,  // 1/10!
      2.7557319223985892511e-06,  // 1/9!
      2.4801587301587301566e-05,  // 1/8!
      1.9841269841269841253e-04,  // 1/7!
      1.3888888888888889419e-03,  // 1/6!
      8.3333333333333332177e-03,  // 1/5!
      4.1666666666666664354e-02,  // 1/4!
      1.6666666666666665741e-01,  // 1/3!
      5.0000000000000000000e-01,  // 1/2!
  };
  __m256d p = _mm256_set1_pd(coeff[0]);
  for (int k = 1; k < 12; ++k)
    p = _mm256_add_pd(_mm256_mul_pd(p, r), _mm256_set1_pd(coeff[k]));
  p = _mm256_mul_pd(p, _mm256_mul_pd(r, r));
  p = _mm256_add_pd(p, _mm256_add_pd(r, _mm256_set1_pd(1.0)));

  __m128i n32 = _mm256_cvtpd_epi32(n);
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  __m256i pow2 = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  p = _mm256_mul_pd(p, _mm256_castsi256_pd(pow2));

  return _mm256_andnot_pd(zero_mask, p);
}

}  // namespace

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

MomentSums avx2(const double* u, const double* w, std::size_t n, double alpha) {
  const __m256d va = _mm256_set1_pd(alpha);
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  __m256d a2 = _mm256_setzero_pd();

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vu = _mm256_loadu_pd(u + i);
    const __m256d vw = _mm256_loadu_pd(w + i);
    const __m256d e = _mm256_mul_pd(vw, exp_pd(_mm256_mul_pd(va, vu)));
    a0 = _mm256_add_pd(a0, e);
    const __m256d eu = _mm256_mul_pd(e, vu);
    a1 = _mm256_add_pd(a1, eu);
    a2 = _mm256_add_pd(a2, _mm256_mul_pd(eu, vu));
  }
  if (i < n) {
    // Zero weight padding contributes exactly zero to every accumulator.
    double ut[4] = {0, 0, 0, 0}, wt[4] = {0, 0, 0, 0};
    std::memcpy(ut, u + i, (n - i) * sizeof(double));
    std::memcpy(wt, w + i, (n - i) * sizeof(double));
    const __m256d vu = _mm256_loadu_pd(ut);
    const __m256d vw = _mm256_loadu_pd(wt);
    const __m256d e = _mm256_mul_pd(vw, exp_pd(_mm256_mul_pd(va, vu)));
    a0 = _mm256_add_pd(a0, e);
    const __m256d eu = _mm256_mul_pd(e, vu);
    a1 = _mm256_add_pd(a1, eu);
    a2 = _mm256_add_pd(a2, _mm256_mul_pd(eu, vu));
  }

  alignas(32) double lane[4];
  MomentSums out{};
  _mm256_store_pd(lane, a0);
  out.s0 = ((lane[0] + lane[1]) + lane[2]) + lane[3];
  _mm256_store_pd(lane, a1);
  out.s1 = ((lane[0] + lane[1]) + lane[2]) + lane[3];
  _mm256_store_pd(lane, a2);
  out.s2 = ((lane[0] + lane[1]) + lane[2]) + lane[3];
  return out;
}

}  // namespace altweib::kernels
