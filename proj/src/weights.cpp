#include "hrv/weights.hpp"

#include <cmath>

#include "hrv/errors.hpp"

namespace hrv {

void validate(const WeightParams& w) {
  require(std::isfinite(w.delta) && w.delta >= 0.0, "delta must be finite and >= 0");
  require(std::isfinite(w.delta_prime) && w.delta_prime >= 0.0, "delta_prime must be finite and >= 0");
  require(std::isfinite(w.a) && w.a > 0.0, "weight parameter a must be > 0");
  require(std::isfinite(w.b) && w.b > 0.0, "weight parameter b must be > 0");
}

double weight_value(const WeightParams& w, double s) {
  if (s < 0.0 || std::isnan(s)) throw NumericError("weight evaluated at negative s");
  if (s == 0.0) return w.delta > 0.0 ? 0.0 : std::pow(w.a, w.delta_prime - w.delta);
  // Exponents combined in log space keep huge and tiny s finite.
  return std::exp(w.delta * std::log(s) + (w.delta_prime - w.delta) * std::log(w.a + w.b * s));
}

double weight_log_derivative(const WeightParams& w, double s) {
  if (!(s > 0.0)) throw NumericError("weight log-derivative needs s > 0");
  return (w.a * w.delta + w.b * w.delta_prime * s) / (w.a + w.b * s);
}

double weight_derivative(const WeightParams& w, double s) {
  if (!(s > 0.0)) throw NumericError("weight derivative needs s > 0");
  return weight_value(w, s) * weight_log_derivative(w, s) / s;
}

double weight_second_derivative(const WeightParams& w, double s) {
  if (!(s > 0.0)) throw NumericError("weight derivative needs s > 0");
  // c = s^d u^e with u = a + b s: c''/c = (L^2 - L)/s^2 + L'/s with L = s c'/c.
  const double u = w.a + w.b * s;
  const double L = weight_log_derivative(w, s);
  const double dL = w.a * w.b * (w.delta_prime - w.delta) / (u * u);
  return weight_value(w, s) * ((L * L - L) / (s * s) + dL / s);
}

AsymptoticsCheck weight_asymptotics_check(const WeightParams& w, AsymptoticDirection dir, int points) {
  require(points >= 2, "asymptotics check needs at least two points");
  AsymptoticsCheck out;
  const double e = w.delta_prime - w.delta;
  for (int i = 0; i < points; ++i) {
    double s = dir == AsymptoticDirection::Zero ? std::pow(10.0, -i) : std::pow(10.0, i);
    double ref = dir == AsymptoticDirection::Zero ? w.delta : w.delta_prime;
    // c(s)/s^ref evaluated in log space
    double lr = w.delta * std::log(s) + e * std::log(w.a + w.b * s) - ref * std::log(s);
    out.s.push_back(s);
    out.ratio.push_back(std::exp(lr));
  }
  out.limit = dir == AsymptoticDirection::Zero ? std::pow(w.a, e) : std::pow(w.b, e);
  return out;
}

}  // namespace hrv
