#include "hrv/trial.hpp"

#include <cmath>

#include "hrv/errors.hpp"
#include "hrv/rng.hpp"

namespace hrv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(TrialKind k) {
  switch (k) {
    case TrialKind::RadialDistance: return "radial";
    case TrialKind::Product: return "product";
    default: return "power-localized";
  }
}

double TrialFunction::g(double s) const {
  double P = normal.value(s);
  if (alpha == 0.0 || P == 0.0) return P;
  return std::pow(s, -alpha) * P;
}

double TrialFunction::g1(double s) const {
  if (alpha == 0.0) return normal.deriv1(s);
  double w = std::pow(s, -alpha);
  return w * (normal.deriv1(s) - alpha * normal.value(s) / s);
}

double TrialFunction::g2(double s) const {
  if (alpha == 0.0) return normal.deriv2(s);
  double w = std::pow(s, -alpha);
  return w * (normal.deriv2(s) - 2.0 * alpha * normal.deriv1(s) / s +
              alpha * (alpha + 1.0) * normal.value(s) / (s * s));
}

double TrialFunction::sg1(double s) const {
  double v = s * normal.deriv1(s) - alpha * normal.value(s);
  return alpha == 0.0 ? v : std::pow(s, -alpha) * v;
}

double TrialFunction::s2g2(double s) const {
  double P1 = s * normal.deriv1(s), P2 = s * (s * normal.deriv2(s));
  if (alpha == 0.0) return P2;
  return std::pow(s, -alpha) * (P2 - 2.0 * alpha * P1 + alpha * (alpha + 1.0) * normal.value(s));
}

bool TrialFunction::twice_differentiable() const {
  if (normal.smoothness() != Smoothness::C2) return false;
  return !tangential || tangential->smoothness() == Smoothness::C2;
}

TrialFunction radial_trial(Profile1D profile, double alpha) {
  require(alpha >= 0.0, "trial exponent alpha must be >= 0");
  TrialFunction t{TrialKind::RadialDistance, alpha, std::move(profile), std::nullopt, Vec(), false, ""};
  t.id = "radial:" + t.normal.name();
  return t;
}

TrialFunction localized_radial_trial(Profile1D profile, Vec center, Profile1D localizer, double alpha) {
  require(std::isfinite(localizer.hi()), "localizer must have compact support");
  TrialFunction t = radial_trial(std::move(profile), alpha);
  t.center = std::move(center);
  t.tangential = std::move(localizer);
  t.id += "+loc";
  return t;
}

TrialFunction power_localized_trial(double alpha, Profile1D cutoff) {
  require(alpha > 0.0, "power-localized trial needs alpha > 0");
  require(std::isfinite(cutoff.hi()), "cutoff must have compact support");
  TrialFunction t = radial_trial(std::move(cutoff), alpha);
  t.kind = TrialKind::PowerLocalized;
  t.id = "power:" + std::to_string(alpha);
  return t;
}

double tangential_room(const ConvexBody& K, const Vec& anchor_y) {
  const AffineHull& h = K.hull();
  const int k = static_cast<int>(h.basis.cols());
  require(k >= 1, "tangential room needs dim K >= 1");
  if (K.kind() == "affine") return kInf;
  const Vec c = h.offset + h.basis * anchor_y;
  if (!contains(K, c)) return 0.0;
  double room = kInf;
  auto probe = [&](const Vec& v) { room = std::min(room, ray_extent(K, c, h.basis * v.normalized())); };
  for (int i = 0; i < k; ++i) {
    Vec e = Vec::Zero(k);
    e(i) = 1.0;
    probe(e);
    probe(-e);
  }
  if (k >= 2) {
    auto rng = make_engine(0x7a11, static_cast<std::uint64_t>(k));
    std::normal_distribution<double> nd;
    for (int j = 0; j < 64; ++j) {
      Vec v(k);
      for (int i = 0; i < k; ++i) v(i) = nd(rng);
      probe(v);
    }
  }
  return room;
}

TrialFunction product_trial(const ConvexBody& K, Profile1D normal, Profile1D tangential, Vec anchor_y, double alpha) {
  const int k = K.dim();
  require(k >= 1 && k <= K.ambient_dim() - 1, "product trial needs 1 <= dim K <= d-1");
  require(anchor_y.size() == k, "anchor must have dim K coordinates");
  require(std::isfinite(tangential.hi()), "tangential factor must have compact support");
  require(alpha >= 0.0, "trial exponent alpha must be >= 0");
  TrialFunction t{TrialKind::Product, alpha, std::move(normal), std::move(tangential), std::move(anchor_y), false, ""};
  double room = tangential_room(K, t.center);
  // Sampled directions can overshoot the true inradius of a polytope, hence
  // the margin; exact for k = 1 and affine K.
  double margin = (k == 1 || !std::isfinite(room)) ? 1.0 : 0.5;
  t.tangential_inside_K = t.tangential->hi() <= margin * room;
  t.id = "product:" + t.normal.name() + "x" + t.tangential->name();
  return t;
}

double trial_value(const ConvexBody& K, const TrialFunction& phi, const Vec& x) {
  if (phi.kind == TrialKind::Product) {
    const AffineHull& h = K.hull();
    Vec w = x - h.offset;
    Vec y = h.basis.transpose() * w;
    double s = (w - h.basis * y).norm();
    double T = phi.tangential->value((y - phi.center).norm());
    return T == 0.0 ? 0.0 : T * phi.g(s);
  }
  double v = phi.g(distance(K, x));
  if (v != 0.0 && phi.tangential) v *= phi.tangential->value((x - phi.center).norm());
  return v;
}

TrialJet trial_jet(const ConvexBody& K, const TrialFunction& phi, const Vec& x) {
  TrialJet j;
  const Projection pr = project_ex(K, x);
  Vec r = x - pr.point;
  j.dist = r.norm();
  j.grad = Vec::Zero(x.size());
  if (j.dist == 0.0) return j;
  const Vec nd = r / j.dist;
  if (phi.kind == TrialKind::Product) {
    const AffineHull& h = K.hull();
    Vec w = x - h.offset;
    Vec y = h.basis.transpose() * w;
    Vec z = w - h.basis * y;
    double s = z.norm();
    Vec u = y - phi.center;
    double rho = u.norm();
    double T = phi.tangential->value(rho), T1 = phi.tangential->deriv1(rho);
    if (T == 0.0 && T1 == 0.0) return j;
    if (s == 0.0) return j;
    double g = phi.g(s), g1 = phi.g1(s);
    j.value = T * g;
    j.grad = (T * g1 / s) * z;
    if (rho > 0.0 && T1 != 0.0) j.grad += (g * T1 / rho) * (h.basis * u);
  } else {
    double g = phi.g(j.dist), g1 = phi.g1(j.dist);
    if (phi.tangential) {
      Vec u = x - phi.center;
      double rho = u.norm();
      double T = phi.tangential->value(rho), T1 = phi.tangential->deriv1(rho);
      j.value = g * T;
      j.grad = (g1 * T) * nd;
      if (rho > 0.0 && T1 != 0.0) j.grad += (g * T1 / rho) * u;
    } else {
      j.value = g;
      j.grad = g1 * nd;
    }
  }
  j.normal_derivative = nd.dot(j.grad);
  return j;
}

std::pair<Vec, Vec> trial_support_box(const ConvexBody& K, const TrialFunction& phi) {
  const int d = K.ambient_dim();
  const double sh = phi.s_hi();
  if (!std::isfinite(sh)) throw ConfigError("trial normal profile must have compact support");
  if (phi.kind == TrialKind::Product) {
    const AffineHull& h = K.hull();
    const double th = phi.tangential->hi();
    Vec c = h.offset + h.basis * phi.center;
    Vec half(d);
    for (int i = 0; i < d; ++i) {
      double t2 = h.basis.row(i).squaredNorm();
      half(i) = std::sqrt(t2) * th + std::sqrt(std::max(0.0, 1.0 - t2)) * sh;
    }
    return {c - half, c + half};
  }
  if (phi.tangential) {
    Vec half = Vec::Constant(d, phi.tangential->hi());
    return {phi.center - half, phi.center + half};
  }
  auto [lo, hi] = K.bounding_box();
  if (!(lo.allFinite() && hi.allFinite())) throw ConfigError("trial support unbounded: K is unbounded and phi has no localizer");
  return {lo.array() - sh, hi.array() + sh};
}

namespace {

// A C2 bump in s: rise on [a, a + w], fall on [b, b + bw].
Profile1D random_bump(std::mt19937_64& g) {
  double a = std::pow(10.0, uniform(g, -1.3, 0.0));
  double w = a * uniform(g, 0.2, 2.0);
  double b = a + w + uniform(g, 0.0, 1.0);
  double bw = b * uniform(g, 0.2, 1.5);
  return smooth_rise(a, a + w) * smooth_cutoff(b, b + bw);
}

Profile1D random_normal(std::mt19937_64& g, bool smooth) {
  double pick = uniform01(g);
  if (pick < 0.3) {
    double n = std::pow(10.0, uniform(g, 1.0, 4.0));
    return smooth ? sigma_sequence(n) : ramp_cutoff(n);
  }
  return random_bump(g);
}

Vec boundary_point(const ConvexBody& K, std::mt19937_64& g) {
  const int d = K.ambient_dim();
  const Vec c = K.hull().offset;
  std::normal_distribution<double> nd;
  for (int t = 0; t < 64; ++t) {
    Vec u(d);
    for (int i = 0; i < d; ++i) u(i) = nd(g);
    Vec far = c + 1e3 * u.normalized();
    if (distance(K, far) > 0.0) return project(K, far);
  }
  throw ConfigError("could not locate a boundary point of K");
}

}  // namespace

std::vector<TrialFunction> random_trials(const ConvexBody& K, int count, std::uint64_t seed, bool smooth) {
  require(count >= 0, "trial count must be >= 0");
  const int d = K.ambient_dim(), k = K.dim();
  const std::string kind = K.kind();
  std::vector<TrialFunction> out;
  for (int i = 0; i < count; ++i) {
    auto g = make_engine(seed, 0x7419a1ULL + static_cast<std::uint64_t>(i));
    Profile1D P = random_normal(g, smooth);
    double alpha = uniform01(g) < 0.5 ? 0.0 : uniform(g, 0.0, 1.5);
    auto make = [&]() -> TrialFunction {
      if (kind == "point" || kind == "ball") return radial_trial(P, alpha);
      if (k >= 1 && k <= d - 1) {
        Vec anchor = Vec::Zero(k);
        double room = tangential_room(K, anchor);
        Profile1D T = smooth_cutoff(1.0, 2.0);
        if (std::isfinite(room)) {
          double r1 = 0.45 * room * uniform(g, 0.5, 1.0);
          T = smooth_cutoff(r1 * uniform(g, 0.3, 0.8), r1);
        } else {
          double r0 = uniform(g, 0.5, 3.0);
          T = smooth_cutoff(r0, r0 * uniform(g, 1.2, 3.0));
        }
        return product_trial(K, P, T, anchor, alpha);
      }
      if (K.bounded()) return radial_trial(P, alpha);
      Vec c = boundary_point(K, g);
      double r0 = uniform(g, 1.0, 3.0);
      return localized_radial_trial(P, c, smooth_cutoff(r0, r0 * uniform(g, 1.2, 2.5)), alpha);
    };
    TrialFunction t = make();
    t.id = "random" + std::to_string(i) + ":" + t.id;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace hrv
