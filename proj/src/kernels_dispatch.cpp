#include <atomic>

#include "hrv/errors.hpp"
#include "hrv/kernels.hpp"

namespace hrv::kernels {

namespace {
std::atomic<int> g_isa{-1};

Isa detect() { return avx2_supported() ? Isa::Avx2 : Isa::Scalar; }
}  // namespace

std::string to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() {
  int v = g_isa.load(std::memory_order_relaxed);
  if (v < 0) {
    v = static_cast<int>(detect());
    g_isa.store(v, std::memory_order_relaxed);
  }
  return static_cast<Isa>(v);
}

void set_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_supported()) throw ConfigError("AVX2 not supported on this CPU");
  g_isa.store(static_cast<int>(isa), std::memory_order_relaxed);
}

double sum(const double* x, std::size_t n) {
  return active_isa() == Isa::Avx2 ? avx2::sum(x, n) : scalar::sum(x, n);
}

void distance_ball(const double* coords, std::size_t n, int d, const double* center, double radius, double* out) {
  if (active_isa() == Isa::Avx2)
    avx2::distance_ball(coords, n, d, center, radius, out);
  else
    scalar::distance_ball(coords, n, d, center, radius, out);
}

void distance_box(const double* coords, std::size_t n, int d, const double* lo, const double* hi, double* out) {
  if (active_isa() == Isa::Avx2)
    avx2::distance_box(coords, n, d, lo, hi, out);
  else
    scalar::distance_box(coords, n, d, lo, hi, out);
}

}  // namespace hrv::kernels
