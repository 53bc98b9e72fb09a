#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hrv/geometry.hpp"
#include "hrv/profiles.hpp"

namespace hrv {

enum class TrialKind { RadialDistance, Product, PowerLocalized };

std::string to_string(TrialKind k);

// Trial functions on Omega = R^d \ K built from a normal profile
// g(s) = s^-alpha P(s) and an optional tangential cutoff T.
//
//   RadialDistance  phi = g(d(x)), times T(|x - center|) when a localizer is set
//   PowerLocalized  same with alpha > 0 and a cutoff P that is 1 near s = 0
//   Product         phi = T(|y - y0|) g(|z|) in coordinates x = o + B y + z of
//                   A_K x A_K^perp; y0 = center (hull coordinates)
struct TrialFunction {
  TrialKind kind = TrialKind::RadialDistance;
  double alpha = 0.0;
  Profile1D normal;
  std::optional<Profile1D> tangential;
  Vec center;
  // Product only: supp T lies inside K, so d = |z| on the support and the
  // factorised (Grushin) form of H applies.
  bool tangential_inside_K = false;
  std::string id;

  double g(double s) const;
  double g1(double s) const;
  double g2(double s) const;
  // s g'(s) and s^2 g''(s); finite down to s ~ 1e-150 where g'' alone overflows.
  double sg1(double s) const;
  double s2g2(double s) const;
  double s_lo() const { return normal.lo(); }
  double s_hi() const { return normal.hi(); }
  // Every factor is C2 (the operator H is then classically defined).
  bool twice_differentiable() const;
};

TrialFunction radial_trial(Profile1D profile, double alpha = 0.0);
TrialFunction localized_radial_trial(Profile1D profile, Vec center, Profile1D localizer, double alpha = 0.0);
TrialFunction power_localized_trial(double alpha, Profile1D cutoff);
// anchor_y are coordinates in the hull basis of K (size k). Checks whether
// supp T stays inside K along sampled directions.
TrialFunction product_trial(const ConvexBody& K, Profile1D normal, Profile1D tangential, Vec anchor_y,
                            double alpha = 0.0);

struct TrialJet {
  double dist = 0.0;
  double value = 0.0;
  Vec grad;
  double normal_derivative = 0.0;  // <grad d, grad phi>
};

double trial_value(const ConvexBody& K, const TrialFunction& phi, const Vec& x);
TrialJet trial_jet(const ConvexBody& K, const TrialFunction& phi, const Vec& x);

// Axis aligned box containing supp phi; throws ConfigError when unbounded.
std::pair<Vec, Vec> trial_support_box(const ConvexBody& K, const TrialFunction& phi);

// Random trials adapted to K: radial for points and balls, product trials
// for 1 <= dim K <= d-1, localized radial trials around a boundary point
// otherwise. `smooth` swaps the C0 log ramps for sigma profiles, as the
// Rellich quotient needs H phi without a singular part.
std::vector<TrialFunction> random_trials(const ConvexBody& K, int count, std::uint64_t seed, bool smooth);

// Hull-coordinate inradius of K around y0 estimated from ray extents in
// 2k + 64 directions; infinite for affine K.
double tangential_room(const ConvexBody& K, const Vec& anchor_y);

}  // namespace hrv
