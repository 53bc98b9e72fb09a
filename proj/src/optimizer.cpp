#include "hrv/optimizer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "hrv/errors.hpp"
#include "hrv/quadrature.hpp"
#include "hrv/rng.hpp"

namespace hrv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.3819660112501051;

std::string io_num(double x) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 6);
  return std::string(buf, r.ptr);
}

bool radial_body(const ConvexBody& K) { return K.kind() == "point" || K.kind() == "ball"; }

struct Exponent {
  double value;
  bool outer;
};

Exponent family_exponent(const ProblemSpec& spec, Family f) {
  const ConstantInputs in = spec.inputs();
  const double p = spec.p;
  const bool outer = f == Family::HardyOuter || f == Family::RellichOuter;
  double m = in.dd();
  double delta = in.delta;
  if (outer) {
    if (!spec.geom.k_inf) throw ConfigError("outer family needs the exact dimension at infinity");
    m = spec.d() - *spec.geom.k_inf;
    delta = in.delta_prime;
  }
  double e = is_rellich(f) ? (m + p * delta - 2.0 * p) / p : (m + delta - p) / p;
  if (e < 0.0) throw ConfigError("critical exponent of the " + to_string(f) + " family is negative");
  return {e, outer};
}

Profile1D family_profile(Family f, double n, double R) {
  switch (f) {
    case Family::HardyRamp: return ramp_cutoff(n);
    case Family::HardyWindow: return log_ramp(n) * log_ramp(n).inverted();
    case Family::HardyOuter: return smooth_rise(0.5 * R, R) * log_ramp(n).inverted().scaled(R);
    case Family::RellichSigma: return sigma_sequence(n);
    case Family::RellichWindow: return sigma_rho(n) * sigma_rho(n).inverted();
    default: return smooth_rise(0.5 * R, R) * sigma_rho(n).inverted().scaled(R);
  }
}

double lower_bound_for(const ProblemSpec& spec, bool rellich) {
  CaseInputs ci = spec.case_inputs();
  if (rellich) return optimal_rellich_case(ci).lower;
  HardyConstant h = hardy_constant(ci.c);
  return h.valid ? h.a_p_pow : 0.0;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::HardyRamp: return "hardy-ramp";
    case Family::HardyWindow: return "hardy-window";
    case Family::HardyOuter: return "hardy-outer";
    case Family::RellichSigma: return "rellich-sigma";
    case Family::RellichWindow: return "rellich-window";
    default: return "rellich-outer";
  }
}

Family parse_family(const std::string& s) {
  for (Family f : {Family::HardyRamp, Family::HardyWindow, Family::HardyOuter, Family::RellichSigma,
                   Family::RellichWindow, Family::RellichOuter})
    if (to_string(f) == s) return f;
  throw ConfigError("unknown trial family '" + s + "'");
}

bool is_rellich(Family f) {
  return f == Family::RellichSigma || f == Family::RellichWindow || f == Family::RellichOuter;
}

TrialFunction family_trial(const ProblemSpec& spec, Family f, double n, const FamilyOptions& opt) {
  require(n > 1.0 && n <= 1e300, "family index n must lie in (1, 1e300]");
  require(opt.outer_scale > 0.0, "outer_scale must be positive");
  const ConvexBody& K = spec.body;
  const int d = spec.d(), k = K.dim();
  const Exponent ex = family_exponent(spec, f);
  Profile1D P = family_profile(f, n, opt.outer_scale);
  if (radial_body(K)) {
    TrialFunction t = radial_trial(P, ex.value);
    t.id = to_string(f) + ":n=" + io_num(n);
    return t;
  }
  if (!(k >= 1 && k <= d - 1)) throw ConfigError("family trials need K a point, a ball or 1 <= dim K <= d-1");
  Vec anchor = Vec::Zero(k);
  const double room = tangential_room(K, anchor);
  Profile1D T = smooth_cutoff(1.0, 2.0);
  if (std::isfinite(room)) {
    if (f != Family::HardyRamp && f != Family::RellichSigma)
      throw ConfigError(to_string(f) + " family needs K unbounded along its affine hull");
    if (!(room > 0.0)) throw ConfigError("no room for a tangential cutoff inside K");
    const double scale = std::min(1.0, room / 8.0);
    if (scale < 1.0) P = P.scaled(scale);
    T = smooth_cutoff(0.2 * room, 0.45 * room);
  } else {
    const double RT = 100.0 * P.hi();
    if (!(std::pow(2.0 * RT, k) < 1e300)) throw ConfigError("family support too wide for a tangential cutoff");
    T = smooth_cutoff(RT, 2.0 * RT);
  }
  TrialFunction t = product_trial(K, P, T, anchor, ex.value);
  t.id = to_string(f) + ":n=" + io_num(n);
  return t;
}

std::vector<double> default_n_list(Family f) {
  switch (f) {
    case Family::HardyWindow:
    case Family::RellichWindow: return {1e8, 1e16, 1e32, 1e64};
    default: return {1e16, 1e32, 1e64, 1e128};
  }
}

SweepResult sequence_sweep(const ProblemSpec& spec, Family f, const std::vector<double>& n_list,
                           const QuadratureSpec& quad, const FamilyOptions& opt) {
  if (n_list.size() < 3) throw ConfigError("sweep needs at least 3 n values");
  const double p = spec.p;
  require(p > 1.0, "sweep fit needs p > 1");
  SweepResult r;
  r.family = to_string(f);
  r.heuristic = is_rellich(f);
  r.lower_bound = lower_bound_for(spec, is_rellich(f));
  for (double n : n_list) {
    TrialFunction t = family_trial(spec, f, n, opt);
    QuotientResult q = is_rellich(f) ? rellich_quotient(spec, t, quad) : hardy_quotient(spec, t, quad);
    r.n.push_back(n);
    r.quotient.push_back(q.quotient);
    r.error.push_back(q.error);
    r.trial_ids.push_back(t.id);
    if (q.quotient < r.lower_bound - q.error - 1e-12 * r.lower_bound) ++r.violations;
  }
  // Least squares for q = q_inf + A x + B x^2, x = (log n)^-(p-1); the
  // curvature column needs a fourth point. The constant shift of log n hidden
  // in the cutoff region shows up as the B x^2 term.
  const Eigen::Index m = static_cast<Eigen::Index>(r.n.size());
  const Eigen::Index cols = m >= 4 ? 3 : 2;
  Mat X(m, cols);
  Vec y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double x = std::pow(std::log(r.n[i]), -(p - 1.0));
    X(i, 0) = 1.0;
    X(i, 1) = x;
    if (cols == 3) X(i, 2) = x * x;
    y(i) = r.quotient[i];
  }
  Mat XtX = X.transpose() * X;
  Eigen::LDLT<Mat> ldlt(XtX);
  if (ldlt.info() != Eigen::Success || !(ldlt.rcond() > 1e-14)) throw NumericError("degenerate sweep fit (repeated n)");
  Vec coef = ldlt.solve(X.transpose() * y);
  r.q_inf = coef(0);
  r.A = coef(1);
  r.B = cols == 3 ? coef(2) : 0.0;
  const double ssr = (y - X * coef).squaredNorm();
  r.fit_rms = std::sqrt(ssr / static_cast<double>(m));
  if (m > cols) {
    Mat inv = ldlt.solve(Mat::Identity(cols, cols));
    r.q_inf_stderr = std::sqrt(ssr / static_cast<double>(m - cols) * inv(0, 0));
  }
  return r;
}

AlphaMin minimize_alpha(const ProblemSpec& spec, double alpha_lo, double alpha_hi, const Profile1D& cutoff,
                        const QuadratureSpec& quad, int starts, double x_tol) {
  require(alpha_lo > 0.0 && alpha_lo <= alpha_hi, "alpha bracket must satisfy 0 < lo <= hi");
  require(starts >= 1, "need at least one start");
  if (!hardy_constant(spec.inputs()).valid) throw PreconditionError("condition of Thm 1.1 not satisfied");
  AlphaMin out;
  double worst_err = 0.0;
  auto f = [&](double a) {
    try {
      QuotientResult q = hardy_quotient(spec, power_localized_trial(a, cutoff), quad);
      worst_err = std::max(worst_err, q.error);
      return q.quotient;
    } catch (const NumericError&) {
      out.hit_wall = true;
      return kInf;
    }
  };
  if (alpha_lo == alpha_hi) {
    out.alpha = alpha_lo;
    out.q = f(alpha_lo);
    out.start_alpha = {out.alpha};
    out.start_q = {out.q};
    return out;
  }
  out.q = kInf;
  for (int s = 0; s < starts; ++s) {
    auto eng = make_engine(quad.seed, 0xa1fa0000ULL + static_cast<std::uint64_t>(s));
    double a = alpha_lo, b = alpha_hi;
    double x = a + (0.1 + 0.8 * uniform01(eng)) * (b - a), fx = f(x);
    while (b - a > x_tol * std::max(1.0, std::abs(x))) {
      double u = (x - a > b - x) ? x - kGolden * (x - a) : x + kGolden * (b - x);
      double fu = f(u);
      if (fu < fx) {
        if (u < x) b = x; else a = x;
        x = u;
        fx = fu;
      } else {
        if (u < x) a = u; else b = u;
      }
    }
    out.start_alpha.push_back(x);
    out.start_q.push_back(fx);
    if (fx < out.q) {
      out.q = fx;
      out.alpha = x;
    }
  }
  double spread = 0.0;
  for (double q : out.start_q) spread = std::max(spread, q - out.q);
  out.unimodal_ok = spread <= 3.0 * worst_err + 10.0 * quad.tol * std::abs(out.q) + 1e-9;
  return out;
}

namespace {

Bracket assemble(const ProblemSpec& spec, const OptimalStatus& st, bool valid, const std::string& invalid_msg,
                 const std::vector<Family>& families, const BracketOptions& opt) {
  Bracket b;
  b.valid = valid;
  if (!valid) {
    b.lower = 0.0;
    b.upper = b.upper_theory = b.upper_numeric = b.gap = kInf;
    b.diagnosis = invalid_msg;
    b.provenance.push_back(st.tag);
    return b;
  }
  b.lower = st.lower;
  b.upper_theory = st.upper;
  b.upper_numeric = kInf;
  b.exact = st.kind == OptimalKind::Exact;
  b.provenance.push_back("status:" + st.tag);
  double best_err = 0.0;
  if (opt.numeric) {
    for (Family f : families) {
      std::vector<double> ns = opt.n_list.empty() ? default_n_list(f) : opt.n_list;
      double n = *std::max_element(ns.begin(), ns.end());
      try {
        TrialFunction t = family_trial(spec, f, n, opt.family);
        QuotientResult q = is_rellich(f) ? rellich_quotient(spec, t, opt.quad) : hardy_quotient(spec, t, opt.quad);
        b.provenance.push_back("trial:" + t.id + "=" + std::to_string(q.quotient));
        if (q.quotient < b.upper_numeric) {
          b.upper_numeric = q.quotient;
          b.best_trial = t.id;
          best_err = q.error;
        }
      } catch (const std::exception& e) {
        b.provenance.push_back("skipped:" + to_string(f) + ":" + e.what());
      }
    }
  }
  b.upper = std::min(b.upper_theory, b.upper_numeric);
  b.gap = b.upper - b.lower;
  b.tolerance = 10.0 * opt.quad.tol * b.lower + best_err + 1e-12;
  if (b.lower > b.upper + b.tolerance)
    b.diagnosis = "inverted bracket: lower bound exceeds a trial quotient";
  else if (b.exact)
    b.diagnosis = "exact";
  else
    b.diagnosis = std::isfinite(b.upper) ? "bracket" : "lower bound only";
  return b;
}

}  // namespace

Bracket bracket_mu(const ProblemSpec& spec, const BracketOptions& opt) {
  validate(opt.quad);
  CaseInputs ci = spec.case_inputs();
  OptimalStatus st = optimal_hardy_case(ci);
  bool valid = hardy_constant(ci.c).valid;
  return assemble(spec, st, valid, "condition of Thm 1.1 not satisfied",
                  {Family::HardyRamp, Family::HardyWindow, Family::HardyOuter}, opt);
}

Bracket bracket_nu(const ProblemSpec& spec, const BracketOptions& opt) {
  validate(opt.quad);
  CaseInputs ci = spec.case_inputs();
  OptimalStatus st = optimal_rellich_case(ci);
  bool valid = st.kind != OptimalKind::Unknown;
  std::string msg = st.tag == "Thm1.2:domain" ? "delta out of [0,2) or p <= 1" : "condition of Thm 1.2 not satisfied";
  return assemble(spec, st, valid, msg, {Family::RellichSigma, Family::RellichWindow, Family::RellichOuter}, opt);
}

PlateauQuotient plateau_cutoff_quotient(const ConvexBody& K, double r, double p, int n_dirs, std::uint64_t seed) {
  require(r > 0.0 && std::isfinite(r), "plateau radius must be positive");
  require(p >= 1.0, "plateau quotient needs p >= 1");
  const int k = K.dim();
  if (k == 0) throw ConfigError("plateau cutoffs need dim K >= 1");
  const Mat& B = K.hull().basis;
  const Vec c = relative_interior_point(K);
  const Profile1D zeta = smooth_cutoff(1.0, 2.0);  // shifted by r - 1 below

  // Radial integrals up to the ray extent rho: the plateau contributes
  // min(rho, r)^k / k in closed form, the transition layer [r, r + 1] is
  // integrated numerically.
  auto radial = [&](double rho) {
    double num = 0.0, den = std::pow(std::min(rho, r), k) / k;
    const double top = std::min(rho, r + 1.0);
    if (top > r) {
      auto fn = [&](double t) { return std::pow(std::abs(zeta.deriv1(t - r + 1.0)), p) * std::pow(t, k - 1); };
      auto fd = [&](double t) { return std::pow(std::abs(zeta.value(t - r + 1.0)), p) * std::pow(t, k - 1); };
      num = quad::gauss_kronrod(fn, r, top, 1e-11).value;
      den += quad::gauss_kronrod(fd, r, top, 1e-11).value;
    }
    return std::pair{num, den};
  };

  PlateauQuotient out;
  out.r = r;
  if (k == 2) {
    const int panels = std::clamp(n_dirs / 16, 64, 4096);
    std::vector<double> knots(panels + 1);
    for (int i = 0; i <= panels; ++i) knots[i] = 2.0 * std::numbers::pi * i / panels;
    auto ray = [&](double th) {
      Vec w(2);
      w << std::cos(th), std::sin(th);
      return radial(ray_extent(K, c, B * w));
    };
    out.gradient_mass = quad::integrate_knots([&](double th) { return ray(th).first; }, knots, 1e-9, 0.0, 4000000).value;
    out.mass = quad::integrate_knots([&](double th) { return ray(th).second; }, knots, 1e-9, 0.0, 4000000).value;
  } else {
    std::vector<Vec> dirs;
    if (k == 1) {
      dirs = {B.col(0), -B.col(0)};
    } else {
      require(n_dirs >= 64, "plateau quotient needs at least 64 directions");
      auto g = make_engine(seed, 0x91a7ull);
      std::normal_distribution<double> nd;
      for (int i = 0; i < n_dirs; ++i) {
        Vec w(k);
        for (int j = 0; j < k; ++j) w(j) = nd(g);
        dirs.push_back(B * w.normalized());
      }
    }
    // The common surface factor cancels in the quotient; keep it for the masses.
    const double surface = k == 1 ? 2.0 : sphere_area(k);
    for (const Vec& u : dirs) {
      auto [num, den] = radial(ray_extent(K, c, u));
      out.gradient_mass += num;
      out.mass += den;
    }
    out.gradient_mass *= surface / static_cast<double>(dirs.size());
    out.mass *= surface / static_cast<double>(dirs.size());
  }
  if (!(out.mass > 0.0)) throw NumericError("plateau cutoff has empty support in K");
  out.quotient = out.gradient_mass / out.mass;
  return out;
}

PlateauDecay plateau_decay(const ConvexBody& K, const std::vector<double>& r_values, double p, int n_dirs,
                           std::uint64_t seed) {
  require(r_values.size() >= 2, "plateau decay needs at least two radii");
  PlateauDecay out;
  double mx = 0.0, my = 0.0;
  for (double r : r_values) {
    out.points.push_back(plateau_cutoff_quotient(K, r, p, n_dirs, seed));
    mx += std::log(r);
    my += std::log(out.points.back().quotient);
  }
  const double m = static_cast<double>(r_values.size());
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& q : out.points) {
    double x = std::log(q.r) - mx;
    sxx += x * x;
    sxy += x * (std::log(q.quotient) - my);
  }
  require(sxx > 0.0, "plateau decay radii must differ");
  out.slope = sxy / sxx;
  return out;
}

}  // namespace hrv
