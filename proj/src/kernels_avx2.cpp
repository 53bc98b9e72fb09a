#include <immintrin.h>

#include <cmath>

#include "hrv/kernels.hpp"

// Compiled for AVX2 per function so the rest of the library stays baseline
// x86-64. No FMA: the scalar reference has none either.
#define HRV_AVX2 __attribute__((target("avx2")))

namespace hrv::kernels::avx2 {

namespace {

HRV_AVX2 inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

HRV_AVX2 inline void neumaier(__m256d& s, __m256d& c, __m256d x) {
  __m256d t = _mm256_add_pd(s, x);
  __m256d big_s = _mm256_cmp_pd(vabs(s), vabs(x), _CMP_GE_OQ);
  __m256d a = _mm256_add_pd(_mm256_sub_pd(s, t), x);
  __m256d b = _mm256_add_pd(_mm256_sub_pd(x, t), s);
  c = _mm256_add_pd(c, _mm256_blendv_pd(b, a, big_s));
  s = t;
}

inline void neumaier1(double& s, double& c, double x) {
  double t = s + x;
  if (std::abs(s) >= std::abs(x))
    c += (s - t) + x;
  else
    c += (x - t) + s;
  s = t;
}

}  // namespace

HRV_AVX2 double sum(const double* x, std::size_t n) {
  __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) neumaier(s, c, _mm256_loadu_pd(x + i));
  alignas(32) double sl[4], cl[4];
  _mm256_store_pd(sl, s);
  _mm256_store_pd(cl, c);
  for (int l = 0; i < n; ++i, ++l) neumaier1(sl[l], cl[l], x[i]);
  double tot = 0.0, comp = 0.0;
  for (int l = 0; l < 4; ++l) neumaier1(tot, comp, sl[l]);
  for (int l = 0; l < 4; ++l) comp += cl[l];
  return tot + comp;
}

HRV_AVX2 void distance_ball(const double* coords, std::size_t n, int d, const double* center, double radius,
                            double* out) {
  const __m256d r = _mm256_set1_pd(radius), zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (int j = 0; j < d; ++j) {
      __m256d t = _mm256_sub_pd(_mm256_loadu_pd(coords + j * n + i), _mm256_set1_pd(center[j]));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(t, t));
    }
    // max(a, 0) with a first matches std::max(a, 0.0) for non-NaN input.
    _mm256_storeu_pd(out + i, _mm256_max_pd(_mm256_sub_pd(_mm256_sqrt_pd(acc), r), zero));
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < d; ++j) {
      double t = coords[j * n + i] - center[j];
      acc += t * t;
    }
    double v = std::sqrt(acc) - radius;
    out[i] = v > 0.0 ? v : 0.0;
  }
}

HRV_AVX2 void distance_box(const double* coords, std::size_t n, int d, const double* lo, const double* hi,
                           double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (int j = 0; j < d; ++j) {
      __m256d x = _mm256_loadu_pd(coords + j * n + i);
      __m256d cl = _mm256_min_pd(_mm256_max_pd(x, _mm256_set1_pd(lo[j])), _mm256_set1_pd(hi[j]));
      __m256d t = _mm256_sub_pd(x, cl);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(t, t));
    }
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(acc));
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < d; ++j) {
      double x = coords[j * n + i];
      double m = x > lo[j] ? x : lo[j];
      double t = x - (m < hi[j] ? m : hi[j]);
      acc += t * t;
    }
    out[i] = std::sqrt(acc);
  }
}

}  // namespace hrv::kernels::avx2
