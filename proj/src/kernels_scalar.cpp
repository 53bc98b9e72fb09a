#include <algorithm>
#include <cmath>

#include "hrv/kernels.hpp"

namespace hrv::kernels::scalar {

namespace {
inline void neumaier(double& s, double& c, double x) {
  double t = s + x;
  if (std::abs(s) >= std::abs(x))
    c += (s - t) + x;
  else
    c += (x - t) + s;
  s = t;
}
}  // namespace

double sum(const double* x, std::size_t n) {
  double s[4] = {0, 0, 0, 0}, c[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) neumaier(s[l], c[l], x[i + l]);
  for (int l = 0; i < n; ++i, ++l) neumaier(s[l], c[l], x[i]);
  double tot = 0.0, comp = 0.0;
  for (int l = 0; l < 4; ++l) neumaier(tot, comp, s[l]);
  for (int l = 0; l < 4; ++l) comp += c[l];
  return tot + comp;
}

void distance_ball(const double* coords, std::size_t n, int d, const double* center, double radius, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < d; ++j) {
      double t = coords[j * n + i] - center[j];
      acc += t * t;
    }
    double v = std::sqrt(acc) - radius;
    out[i] = v > 0.0 ? v : 0.0;
  }
}

void distance_box(const double* coords, std::size_t n, int d, const double* lo, const double* hi, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
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

}  // namespace hrv::kernels::scalar
