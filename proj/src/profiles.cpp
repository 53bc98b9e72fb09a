#include "hrv/profiles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "hrv/errors.hpp"

namespace hrv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Quintic smoothstep and its derivatives on [0, 1].
double step(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
double step1(double t) { return 30.0 * t * t * (1.0 - t) * (1.0 - t); }
double step2(double t) { return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t); }

Smoothness weaker(Smoothness a, Smoothness b) { return a < b ? a : b; }

std::vector<double> merge_knots(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

void require_n(double n) { require(std::isfinite(n) && n > 1.0, "profile index n must be > 1"); }

std::string short_num(double x) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 6);
  return std::string(buf, r.ptr);
}

}  // namespace

Profile1D::Profile1D(std::string name, Fn value, Fn d1, Fn d2, double lo, double hi, std::vector<double> knots,
                     Smoothness smooth)
    : name_(std::move(name)),
      value_(std::make_shared<const Fn>(std::move(value))),
      d1_(std::make_shared<const Fn>(std::move(d1))),
      d2_(std::make_shared<const Fn>(std::move(d2))),
      lo_(lo),
      hi_(hi),
      knots_(std::move(knots)),
      smooth_(smooth) {
  std::sort(knots_.begin(), knots_.end());
  knots_.erase(std::unique(knots_.begin(), knots_.end()), knots_.end());
}

double Profile1D::derivative(int j, double s) const {
  switch (j) {
    case 0: return value(s);
    case 1: return deriv1(s);
    case 2: return deriv2(s);
    default: throw ConfigError("derivative order must be 0, 1 or 2");
  }
}

Profile1D Profile1D::operator*(const Profile1D& o) const {
  auto f = *this;
  auto g = o;
  auto v = [f, g](double s) {
    double a = f.value(s);
    return a == 0.0 ? 0.0 : a * g.value(s);
  };
  auto d1 = [f, g](double s) { return f.deriv1(s) * g.value(s) + f.value(s) * g.deriv1(s); };
  auto d2 = [f, g](double s) {
    return f.deriv2(s) * g.value(s) + 2.0 * f.deriv1(s) * g.deriv1(s) + f.value(s) * g.deriv2(s);
  };
  double lo = std::max(lo_, o.lo_), hi = std::min(hi_, o.hi_);
  std::vector<double> k;
  for (double x : merge_knots(knots_, o.knots_))
    if (x >= lo && x <= hi) k.push_back(x);
  return Profile1D(name_ + "*" + o.name_, v, d1, d2, lo, hi, k, weaker(smooth_, o.smooth_));
}

Profile1D Profile1D::scaled(double r) const {
  require(r > 0.0 && std::isfinite(r), "scale must be positive");
  auto f = *this;
  std::vector<double> k;
  for (double x : knots_) k.push_back(x * r);
  return Profile1D(
      name_ + "@" + short_num(r), [f, r](double s) { return f.value(s / r); },
      [f, r](double s) { return f.deriv1(s / r) / r; }, [f, r](double s) { return f.deriv2(s / r) / (r * r); },
      lo_ * r, hi_ * r, k, smooth_);
}

Profile1D Profile1D::inverted() const {
  auto f = *this;
  std::vector<double> k;
  for (double x : knots_)
    if (x > 0.0 && std::isfinite(x)) k.push_back(1.0 / x);
  double lo = hi_ == kInf ? 0.0 : 1.0 / hi_;
  double hi = lo_ == 0.0 ? kInf : 1.0 / lo_;
  return Profile1D(
      name_ + "(1/s)", [f](double s) { return f.value(1.0 / s); },
      [f](double s) { return -f.deriv1(1.0 / s) / (s * s); },
      [f](double s) {
        double u = 1.0 / s;
        return f.deriv2(u) * u * u * u * u + 2.0 * f.deriv1(u) * u * u * u;
      },
      lo, hi, k, smooth_);
}

Profile1D log_ramp(double n) {
  require_n(n);
  const double L = std::log(n), a = 1.0 / n;
  auto v = [=](double s) {
    if (s <= a) return 0.0;
    if (s >= 1.0) return 1.0;
    return std::log(s * n) / L;
  };
  auto d1 = [=](double s) { return (s > a && s < 1.0) ? 1.0 / (s * L) : 0.0; };
  auto d2 = [=](double s) { return (s > a && s < 1.0) ? -1.0 / (s * s * L) : 0.0; };
  return Profile1D("xi_" + short_num(n), v, d1, d2, a, kInf, {a, 1.0}, Smoothness::C0);
}

Profile1D smooth_cutoff(double r0, double r1) {
  require(r0 > 0.0 && r0 < r1, "smooth_cutoff needs 0 < r0 < r1");
  const double w = r1 - r0;
  auto v = [=](double s) {
    if (s <= r0) return 1.0;
    if (s >= r1) return 0.0;
    return 1.0 - step((s - r0) / w);
  };
  auto d1 = [=](double s) { return (s > r0 && s < r1) ? -step1((s - r0) / w) / w : 0.0; };
  auto d2 = [=](double s) { return (s > r0 && s < r1) ? -step2((s - r0) / w) / (w * w) : 0.0; };
  return Profile1D("zeta", v, d1, d2, 0.0, r1, {r0, r1}, Smoothness::C2);
}

Profile1D smooth_rise(double r0, double r1) {
  require(r0 > 0.0 && r0 < r1, "smooth_rise needs 0 < r0 < r1");
  const double w = r1 - r0;
  auto v = [=](double s) {
    if (s <= r0) return 0.0;
    if (s >= r1) return 1.0;
    return step((s - r0) / w);
  };
  auto d1 = [=](double s) { return (s > r0 && s < r1) ? step1((s - r0) / w) / w : 0.0; };
  auto d2 = [=](double s) { return (s > r0 && s < r1) ? step2((s - r0) / w) / (w * w) : 0.0; };
  return Profile1D("rise", v, d1, d2, r0, kInf, {r0, r1}, Smoothness::C2);
}

Profile1D ramp_cutoff(double n) { return log_ramp(n) * smooth_cutoff(); }

double sigma_norm(double n) {
  require_n(n);
  return 1.0 - (1.0 - 1.0 / n) / std::log(n);
}

double sigma_eta(double n, double s) {
  require_n(n);
  const double L = std::log(n), a = 1.0 / n;
  if (s <= a || s >= 1.0) return 0.0;
  return 2.0 * std::log(s * n) / (s * L * L) - (2.0 / L) * (s - a) / (1.0 - a);
}

Profile1D sigma_rho(double n) {
  require_n(n);
  const double L = std::log(n), a = 1.0 / n, Z = sigma_norm(n);
  auto v = [=](double s) {
    if (s <= a) return 0.0;
    if (s >= 1.0) return 1.0;
    double u = std::log(s * n) / L;
    return (u * u - (s - a) * (s - a) / (L * (1.0 - a))) / Z;
  };
  auto d1 = [=](double s) { return sigma_eta(n, s) / Z; };
  auto d2 = [=](double s) {
    if (s <= a || s >= 1.0) return 0.0;
    return (2.0 * (1.0 - std::log(s * n)) / (s * s * L * L) - 2.0 / (L * (1.0 - a))) / Z;
  };
  return Profile1D("rho_" + short_num(n), v, d1, d2, a, kInf, {a, 1.0}, Smoothness::C1);
}

Profile1D sigma_sequence(double n) { return sigma_rho(n) * smooth_cutoff(); }

Profile1D rellich_profile(double alpha, double alpha_prime) {
  require(alpha >= 0.0 && alpha_prime >= 0.0, "rellich_profile needs alpha, alpha' >= 0");
  const double A = alpha, B = alpha_prime;
  auto v = [=](double s) { return std::exp(-A * std::log(s) + (A - B) * std::log1p(s)); };
  auto d1 = [=](double s) {
    double x = std::exp(-A * std::log(s) + (A - B) * std::log1p(s));
    return -x * (A + B * s) / (s * (1.0 + s));
  };
  auto d2 = [=](double s) {
    double x = std::exp(-A * std::log(s) + (A - B) * std::log1p(s));
    double q = s * (1.0 + s);
    return x * (A * (A + 1.0) + 2.0 * A * (B + 1.0) * s + B * (B + 1.0) * s * s) / (q * q);
  };
  return Profile1D("chi", v, d1, d2, 0.0, kInf, {}, Smoothness::C2);
}

Profile1D power_profile(double alpha) {
  const double A = alpha;
  return Profile1D(
      "pow", [=](double s) { return std::pow(s, -A); }, [=](double s) { return -A * std::pow(s, -A - 1.0); },
      [=](double s) { return A * (A + 1.0) * std::pow(s, -A - 2.0); }, 0.0, kInf, {}, Smoothness::C2);
}

Profile1D constant_profile(double c) {
  return Profile1D(
      "const", [=](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; }, 0.0, kInf, {},
      Smoothness::C2);
}

double ramp_energy_closed(double n, double p) {
  require_n(n);
  return std::pow(std::log(n), 1.0 - p);
}

double ramp_log_mass_closed(double n, double p) {
  require_n(n);
  return std::log(n) / (p + 1.0);
}

double square_ramp_curvature_closed(double n, double p) {
  require_n(n);
  const double L = std::log(n);
  require(L >= 1.0, "closed form needs log n >= 1");
  // u = log(r n): r^(2p-1) |2 r^-2 (1-u)/L^2|^p dr = (2/L^2)^p |1-u|^p du
  return std::pow(2.0, p) * std::pow(L, -2.0 * p) * (1.0 + std::pow(L - 1.0, p + 1.0)) / (p + 1.0);
}

double square_ramp_curvature_bound(double n, double p) {
  require_n(n);
  return std::pow(2.0, p - 1.0) * std::pow(std::log(n), -(p - 1.0));
}

namespace {

// Value of r * h(r) at r = e^t, the integrand in log scale.
double log_integrand(const std::function<double(double)>& h, double t) {
  double r = std::exp(t);
  return std::abs(r * h(r));
}

struct Tail {
  double value = 0.0;
  bool divergent = false;
};

// Integrand is assumed ~ g(t0) e^{-lam |t - t0|} beyond t0, with lam measured
// from two probes further out. dir = -1 for the r -> 0 end, +1 for r -> inf.
Tail tail_estimate(const std::function<double(double)>& h, double t0, int dir) {
  const double step = 23.0;  // ten decades
  double g0 = log_integrand(h, t0);
  double g1 = log_integrand(h, t0 + dir * step);
  double g2 = log_integrand(h, t0 + 2 * dir * step);
  Tail tl;
  if (!std::isfinite(g1) || !std::isfinite(g2)) {
    tl.divergent = true;
    return tl;
  }
  if (g0 == 0.0 && g1 == 0.0 && g2 == 0.0) return tl;
  if (g2 > 0.0 && g1 > 0.0) {
    double lam = std::log(g1 / g2) / step;
    if (!(lam > 1e-3)) {
      tl.divergent = true;
      return tl;
    }
    tl.value = g0 / lam;
    return tl;
  }
  if (g1 > 0.0) tl.value = g0 * step;  // g2 underflowed: very fast decay
  return tl;
}

}  // namespace

ProfileIntegral integrate_half_line(const std::function<double(double)>& h, double lo, double hi,
                                    const std::vector<double>& knots, double rel_tol, long max_evals) {
  ProfileIntegral out;
  require(lo >= 0.0 && hi > lo, "integration interval must satisfy 0 <= lo < hi");
  const double cut_lo = 1e-60, cut_hi = 1e60;
  double a = lo == 0.0 ? std::min(cut_lo, hi / 2.0) : lo;
  double b = std::isfinite(hi) ? hi : std::max(cut_hi, 2.0 * a);
  std::vector<double> k{a, b};
  for (double x : knots)
    if (x > a && x < b) k.push_back(x);
  // Log scale whenever the range spans many decades.
  if (b / a > 1e3 && a > 0.0) {
    out.result = quad::integrate_log(h, k, rel_tol, 0.0, max_evals);
  } else {
    out.result = quad::integrate_knots(h, k, rel_tol, 0.0, max_evals);
  }
  Tail lo_tail, hi_tail;
  if (lo == 0.0) lo_tail = tail_estimate(h, std::log(a), -1);
  if (!std::isfinite(hi)) hi_tail = tail_estimate(h, std::log(b), +1);
  out.divergent = lo_tail.divergent || hi_tail.divergent || !std::isfinite(out.result.value);
  out.result.value += lo_tail.value + hi_tail.value;
  out.result.error += 0.1 * (lo_tail.value + hi_tail.value);
  if (out.divergent) {
    out.result.value = kInf;
    out.result.converged = false;
  }
  return out;
}

ProfileIntegral profile_integral(const Profile1D& f, double gamma, int j, double p, double rel_tol) {
  require(p > 0.0, "profile_integral needs p > 0");
  require(j >= 0 && j <= 2, "derivative order must be 0, 1 or 2");
  auto h = [&](double r) {
    double v = f.derivative(j, r);
    if (v == 0.0) return 0.0;
    return std::pow(r, gamma) * std::pow(std::abs(v), p);
  };
  return integrate_half_line(h, f.lo(), f.hi(), f.knots(), rel_tol);
}

}  // namespace hrv
