#pragma once

#include <vector>

namespace hrv {

// c(s) = s^delta (a + b s)^(delta' - delta). Boundary exponent delta,
// exponent at infinity delta'.
struct WeightParams {
  double delta = 0.0;
  double delta_prime = 0.0;
  double a = 1.0;
  double b = 1.0;

  double dmin() const { return delta < delta_prime ? delta : delta_prime; }
  double dmax() const { return delta < delta_prime ? delta_prime : delta; }
};

void validate(const WeightParams& w);

// Value at s >= 0. At s = 0 returns 0 for delta > 0 and a^(delta'-delta)
// for delta = 0.
double weight_value(const WeightParams& w, double s);
double weight_derivative(const WeightParams& w, double s);
// s c'(s) / c(s) = (a delta + b delta' s) / (a + b s)
double weight_log_derivative(const WeightParams& w, double s);
// c''(s), used by the second order operator checks.
double weight_second_derivative(const WeightParams& w, double s);

enum class AsymptoticDirection { Zero, Infinity };

struct AsymptoticsCheck {
  std::vector<double> s;
  std::vector<double> ratio;  // c(s)/s^delta or c(s)/s^delta'
  double limit = 0.0;         // a^(delta'-delta) or b^(delta'-delta)
};

// Ratios on a geometric grid of `points` values running toward the limit.
AsymptoticsCheck weight_asymptotics_check(const WeightParams& w, AsymptoticDirection dir, int points = 13);

}  // namespace hrv
