#pragma once

#include <cstddef>
#include <string>

// Batch kernels used by the Monte Carlo quadrature. Each kernel has a scalar
// reference and an AVX2 variant; both produce bit-identical results, which
// the equivalence tests check with exact comparison.
namespace hrv::kernels {

enum class Isa { Scalar, Avx2 };

std::string to_string(Isa isa);
bool avx2_supported();
// Selected at first use from the CPU; set_isa overrides (throws ConfigError
// when the CPU lacks the instruction set).
Isa active_isa();
void set_isa(Isa isa);

// Points are stored structure-of-arrays: coordinate j of point i at
// coords[j * n + i].

// Four interleaved Neumaier accumulators (element i goes to lane i % 4),
// merged in lane order.
double sum(const double* x, std::size_t n);
// max(|x - center| - radius, 0); radius 0 gives the point distance.
void distance_ball(const double* coords, std::size_t n, int d, const double* center, double radius, double* out);
// Distance to the box [lo, hi]; bounds may be infinite.
void distance_box(const double* coords, std::size_t n, int d, const double* lo, const double* hi, double* out);

namespace scalar {
double sum(const double* x, std::size_t n);
void distance_ball(const double* coords, std::size_t n, int d, const double* center, double radius, double* out);
void distance_box(const double* coords, std::size_t n, int d, const double* lo, const double* hi, double* out);
}  // namespace scalar

namespace avx2 {
double sum(const double* x, std::size_t n);
void distance_ball(const double* coords, std::size_t n, int d, const double* center, double radius, double* out);
void distance_box(const double* coords, std::size_t n, int d, const double* lo, const double* hi, double* out);
}  // namespace avx2

}  // namespace hrv::kernels
