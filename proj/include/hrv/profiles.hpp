#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "hrv/quadrature.hpp"

namespace hrv {

enum class Smoothness { C0, C1, C2 };

// A scalar function on (0, inf) with analytic first and second derivatives.
// Outside [lo, hi] the function is identically zero; lo may be 0 and hi may
// be infinite. Knots mark points where a derivative may jump.
class Profile1D {
 public:
  using Fn = std::function<double(double)>;

  Profile1D(std::string name, Fn value, Fn d1, Fn d2, double lo, double hi, std::vector<double> knots,
            Smoothness smooth);

  double value(double s) const { return (*value_)(s); }
  double deriv1(double s) const { return (*d1_)(s); }
  double deriv2(double s) const { return (*d2_)(s); }
  double derivative(int j, double s) const;

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<double>& knots() const { return knots_; }
  Smoothness smoothness() const { return smooth_; }
  const std::string& name() const { return name_; }

  Profile1D operator*(const Profile1D& o) const;
  // s -> f(s / r)
  Profile1D scaled(double r) const;
  // s -> f(1 / s)
  Profile1D inverted() const;

 private:
  std::string name_;
  std::shared_ptr<const Fn> value_, d1_, d2_;
  double lo_, hi_;
  std::vector<double> knots_;
  Smoothness smooth_;
};

// xi_n: 0 on (0, 1/n], log(r n)/log n on [1/n, 1], 1 beyond.
Profile1D log_ramp(double n);
// zeta: 1 for s <= r0, 0 for s >= r1, quintic smoothstep in between (C2).
Profile1D smooth_cutoff(double r0 = 1.0, double r1 = 2.0);
// 0 for s <= r0, 1 for s >= r1; the complement of smooth_cutoff.
Profile1D smooth_rise(double r0, double r1);
// chi_n = xi_n zeta
Profile1D ramp_cutoff(double n);
// rho_n: the C1 normalisation of the corrected, integrated square ramp;
// 0 on (0, 1/n], 1 on [1, inf).
Profile1D sigma_rho(double n);
// sigma_n = rho_n zeta
Profile1D sigma_sequence(double n);
// chi(s) = s^-alpha (1 + s)^(alpha - alpha')
Profile1D rellich_profile(double alpha, double alpha_prime);
Profile1D power_profile(double alpha);
Profile1D constant_profile(double c = 1.0);

// Derivative eta_n of the corrected square ramp on [1/n, 1] and its
// normaliser zeta_n(1); exposed so tests can integrate eta_n independently.
double sigma_eta(double n, double s);
double sigma_norm(double n);

// Closed forms for the log-ramp integrals.
double ramp_energy_closed(double n, double p);          // int_0^1 r^(p-1) |xi_n'|^p
double ramp_log_mass_closed(double n, double p);        // int_{1/n}^1 r^-1 xi_n^p
double square_ramp_curvature_closed(double n, double p);  // int_{1/n}^1 r^(2p-1) |(xi_n^2)''|^p, log n >= 1
double square_ramp_curvature_bound(double n, double p);   // 2^(p-1) (log n)^-(p-1)

struct ProfileIntegral {
  quad::Result result;
  bool divergent = false;
};

// int r^gamma |f^(j)(r)|^p dr over the support, split at the knots. Infinite
// or zero endpoints are handled in log scale with a geometric tail estimate;
// a non-decaying tail sets the divergence flag.
ProfileIntegral profile_integral(const Profile1D& f, double gamma, int j, double p, double rel_tol = 1e-10);

// Shared driver: integrates h(r) over [lo, hi] split at knots, with the same
// tail treatment as profile_integral. Used by the quotient engines.
ProfileIntegral integrate_half_line(const std::function<double(double)>& h, double lo, double hi,
                                    const std::vector<double>& knots, double rel_tol, long max_evals = 400000);

}  // namespace hrv
