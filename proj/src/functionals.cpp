#include "hrv/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hrv/errors.hpp"
#include "hrv/kernels.hpp"
#include "hrv/rng.hpp"

namespace hrv {

namespace {

constexpr int kReplicates = 8;

enum class Field { Value, Grad, Dir, H };

// Integrand c^c_pow d^d_pow |field|^p.
struct Term {
  Field field;
  double c_pow;
  double d_pow;
  double p;
};

// Point data with the derivative fields premultiplied by powers of d, so
// that huge n stay finite: grad and dir carry d^1, H carries d^2.
struct Local {
  double dist = 0.0, c = 0.0, value = 0.0, grad = 0.0, dir = 0.0, H = 0.0;
};

// exp(log_measure) c^c_pow d^d_pow |field|^p, assembled in log space.
double eval_term(const Term& t, const Local& L, double log_measure = 0.0) {
  double f = 0.0;
  int j = 0;
  switch (t.field) {
    case Field::Value: f = L.value; break;
    case Field::Grad: f = L.grad; j = 1; break;
    case Field::Dir: f = L.dir; j = 1; break;
    case Field::H: f = L.H; j = 2; break;
  }
  if (f == 0.0 || !(L.dist > 0.0)) return 0.0;
  double lw = t.p * std::log(std::abs(f)) + (t.d_pow - j * t.p) * std::log(L.dist) + log_measure;
  if (t.c_pow != 0.0) lw += t.c_pow * std::log(L.c);
  return std::exp(lw);
}

bool needs_H(const Term& a, const Term& b) { return a.field == Field::H || b.field == Field::H; }

// -(c g')' - c g' (lap/2 - 1)/s: H of g(d) when Lap(d^2) = lap.
double radial_H(const WeightParams& w, const TrialFunction& phi, double s, double lap) {
  double c = weight_value(w, s), c1 = weight_derivative(w, s);
  double g1 = phi.g1(s), g2 = phi.g2(s);
  return -(c1 * g1 + c * g2) - c * g1 * (0.5 * lap - 1.0) / s;
}

// s^2 times radial_H, from s g' and s^2 g''.
double radial_H_scaled(const WeightParams& w, const TrialFunction& phi, double s, double lap) {
  double c = weight_value(w, s), sc1 = c * weight_log_derivative(w, s);
  double sg1 = phi.sg1(s), s2g2 = phi.s2g2(s);
  return -(sc1 * sg1 + c * s2g2) - c * sg1 * (0.5 * lap - 1.0);
}

double ball_radius(const ConvexBody& K) {
  if (const auto* b = std::get_if<Ball>(&K.data())) return b->radius;
  return 0.0;
}

double fd_H(const ProblemSpec& spec, const TrialFunction& phi, const Vec& x) {
  const ConvexBody& K = spec.body;
  double d = distance(K, x);
  if (!(d > 0.0)) throw NumericError("stencil crossing Gamma: x lies in K");
  const double h = std::min(1e-5 * std::max(d, 1e-2), 0.25 * d);
  double acc = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    auto F = [&](double t) {
      Vec y = x;
      y(i) += t;
      TrialJet j = trial_jet(K, phi, y);
      return weight_value(spec.weights, j.dist) * j.grad(i);
    };
    acc += (F(-2.0 * h) - 8.0 * F(-h) + 8.0 * F(h) - F(2.0 * h)) / (12.0 * h);
  }
  return -acc;
}

// Grushin split c g (-Delta T) + T H_m g in the product coordinates.
double grushin_H(const ProblemSpec& spec, const TrialFunction& phi, const Vec& x) {
  const AffineHull& h = spec.body.hull();
  const int k = static_cast<int>(h.basis.cols()), m = spec.d() - k;
  Vec w = x - h.offset;
  Vec y = h.basis.transpose() * w;
  double s = (w - h.basis * y).norm();
  if (!(s > 0.0)) throw NumericError("stencil crossing Gamma: x lies in A_K");
  double rho = (y - phi.center).norm();
  const Profile1D& T = *phi.tangential;
  double T0 = T.value(rho), T1 = T.deriv1(rho), T2 = T.deriv2(rho);
  double lapT = rho > 0.0 ? T2 + (k - 1) * T1 / rho : k * T2;
  double c = weight_value(spec.weights, s), c1 = weight_derivative(spec.weights, s);
  double g = phi.g(s), g1 = phi.g1(s), g2 = phi.g2(s);
  double Hm = -(c1 * g1 + c * g2) - c * g1 * (m - 1) / s;
  return -c * g * lapT + T0 * Hm;
}

Local local_at(const ProblemSpec& spec, const TrialFunction& phi, const Vec& x, bool with_H, HStrategy hs) {
  TrialJet j = trial_jet(spec.body, phi, x);
  Local L;
  L.dist = j.dist;
  L.value = j.value;
  if (j.value == 0.0 && j.grad.squaredNorm() == 0.0 && !with_H) return L;
  L.c = weight_value(spec.weights, j.dist);
  L.grad = j.dist * j.grad.norm();
  L.dir = j.dist * std::abs(j.normal_derivative);
  if (with_H) L.H = j.dist * j.dist * weighted_operator_apply(spec, phi, x, hs);
  return L;
}

void check_support(const TrialFunction& phi, Route route) {
  if (phi.s_lo() > 0.0) return;
  if (phi.kind == TrialKind::PowerLocalized || phi.alpha > 0.0) {
    if (route == Route::MonteCarlo) throw ConfigError("singular trial needs the radial-1d or tensor-grid route");
    return;
  }
  if (phi.normal.value(1e-300) != 0.0) throw ConfigError("trial support meets K");
}

double rel_tol_1d(const QuadratureSpec& q) { return std::max(1e-12, 1e-2 * q.tol); }

struct Pair {
  quad::Result num, den;
};

Pair radial_route(const ProblemSpec& spec, const TrialFunction& phi, const Term& tn, const Term& td,
                  const QuadratureSpec& q) {
  const int d = spec.d();
  const double R = ball_radius(spec.body);
  const double area = sphere_area(d);
  const bool wH = needs_H(tn, td);
  auto local = [&](double s) {
    Local L;
    L.dist = s;
    L.c = weight_value(spec.weights, s);
    L.value = phi.g(s);
    L.grad = L.dir = std::abs(phi.sg1(s));
    if (wH) {
      double lap = R > 0.0 ? 2.0 * (d - R * (d - 1) / (R + s)) : 2.0 * d;
      L.H = radial_H_scaled(spec.weights, phi, s, lap);
    }
    return L;
  };
  const double log_area = std::log(area);
  auto run = [&](const Term& t) {
    auto f = [&](double s) { return eval_term(t, local(s), log_area + (d - 1) * std::log(R + s)); };
    ProfileIntegral pi = integrate_half_line(f, phi.s_lo(), phi.s_hi(), phi.normal.knots(), rel_tol_1d(q),
                                             std::max<long>(q.max_evals / 2, 20000));
    if (pi.divergent) throw NumericError("divergent integral in radial quotient");
    return pi.result;
  };
  return {run(tn), run(td)};
}

Pair tensor_route(const ProblemSpec& spec, const TrialFunction& phi, const Term& tn, const Term& td,
                  const QuadratureSpec& q) {
  const int d = spec.d(), k = spec.body.dim(), m = d - k;
  const Profile1D& T = *phi.tangential;
  const double wk = sphere_area(k), wm = sphere_area(m);
  const bool wH = needs_H(tn, td);
  const double rel = rel_tol_1d(q);
  std::vector<double> inner_knots{0.0, T.hi()};
  for (double x : T.knots())
    if (x > 0.0 && x < T.hi()) inner_knots.push_back(x);
  auto run = [&](const Term& t) {
    auto outer = [&](double s) {
      // Scaled as in Local: sg1 = s g', s2Hm = s^2 H_m g.
      const double c = weight_value(spec.weights, s), sc1 = c * weight_log_derivative(spec.weights, s);
      const double g = phi.g(s), sg1 = phi.sg1(s);
      const double s2Hm = wH ? -(sc1 * sg1 + c * phi.s2g2(s)) - c * sg1 * (m - 1) : 0.0;
      if (g == 0.0 && sg1 == 0.0 && s2Hm == 0.0) return 0.0;
      const double log_s = (m - 1) * std::log(s);
      auto inner = [&](double rho) {
        double T0 = T.value(rho), T1 = T.deriv1(rho);
        Local L;
        L.dist = s;
        L.c = c;
        L.value = T0 * g;
        L.grad = std::hypot(T0 * sg1, T1 * s * g);
        L.dir = std::abs(T0 * sg1);
        if (wH) {
          double T2 = T.deriv2(rho);
          double lapT = rho > 0.0 ? T2 + (k - 1) * T1 / rho : k * T2;
          L.H = -c * (s * (s * g)) * lapT + T0 * s2Hm;
        }
        double v = eval_term(t, L, log_s);
        return v == 0.0 ? 0.0 : wk * std::pow(rho, k - 1) * v;
      };
      quad::Result r = quad::integrate_knots(inner, inner_knots, rel, 0.0, 20000);
      return wm * r.value;
    };
    ProfileIntegral pi = integrate_half_line(outer, phi.s_lo(), phi.s_hi(), phi.normal.knots(), rel,
                                             std::max<long>(q.max_evals / 50, 20000));
    if (pi.divergent) throw NumericError("divergent integral in tensor quotient");
    return pi.result;
  };
  return {run(tn), run(td)};
}

struct McOutcome {
  quad::Result num, den;
};

void batch_distances(const ConvexBody& K, const std::vector<double>& coords, std::size_t n, int d,
                     std::vector<double>& out) {
  out.resize(n);
  const BodyData& data = K.data();
  if (const auto* p = std::get_if<SinglePoint>(&data)) {
    kernels::distance_ball(coords.data(), n, d, p->point.data(), 0.0, out.data());
  } else if (const auto* b = std::get_if<Ball>(&data)) {
    kernels::distance_ball(coords.data(), n, d, b->center.data(), b->radius, out.data());
  } else if (const auto* bx = std::get_if<Box>(&data)) {
    kernels::distance_box(coords.data(), n, d, bx->lower.data(), bx->upper.data(), out.data());
  } else {
    Vec x(d);
    for (std::size_t i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) x(j) = coords[j * n + i];
      out[i] = distance(K, x);
    }
  }
}

McOutcome mc_route(const ProblemSpec& spec, const TrialFunction& phi, const Term& tn, const Term& td,
                   const QuadratureSpec& q) {
  const int d = spec.d();
  auto [lo, hi] = trial_support_box(spec.body, phi);
  double vol = 1.0;
  for (int j = 0; j < d; ++j) vol *= hi(j) - lo(j);
  const bool wH = needs_H(tn, td);
  const bool product = phi.kind == TrialKind::Product;
  std::vector<double> sn(kReplicates, 0.0), sd(kReplicates, 0.0);
  std::vector<long> cnt(kReplicates, 0);
  long evals = 0;
  long N = 4096;
  std::vector<double> coords, dist, vn, vd;
  McOutcome out;
  for (int round = 0;; ++round) {
    const long M = std::max<long>(1, static_cast<long>(std::floor(std::pow(static_cast<double>(N), 1.0 / d))));
    long cells = 1;
    for (int j = 0; j < d; ++j) cells *= M;
    const long per = (N + cells - 1) / cells;
    const std::size_t n = static_cast<std::size_t>(cells * per);
    for (int rep = 0; rep < kReplicates; ++rep) {
      auto eng = make_engine(q.seed, static_cast<std::uint64_t>(round) * kReplicates + rep + 1);
      coords.assign(n * d, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        long cell = static_cast<long>(i % static_cast<std::size_t>(cells));
        for (int j = 0; j < d; ++j) {
          long idx = cell % M;
          cell /= M;
          double u = (static_cast<double>(idx) + uniform01(eng)) / static_cast<double>(M);
          coords[j * n + i] = lo(j) + u * (hi(j) - lo(j));
        }
      }
      batch_distances(spec.body, coords, n, d, dist);
      vn.assign(n, 0.0);
      vd.assign(n, 0.0);
      Vec x(d);
      for (std::size_t i = 0; i < n; ++i) {
        if (dist[i] <= phi.s_lo()) continue;
        if (!product && dist[i] >= phi.s_hi()) continue;
        for (int j = 0; j < d; ++j) x(j) = coords[j * n + i];
        Local L = local_at(spec, phi, x, wH, HStrategy::Auto);
        vn[i] = eval_term(tn, L);
        vd[i] = eval_term(td, L);
      }
      sn[rep] += kernels::sum(vn.data(), n);
      sd[rep] += kernels::sum(vd.data(), n);
      cnt[rep] += static_cast<long>(n);
    }
    evals += static_cast<long>(n) * kReplicates;
    double mn = 0.0, md = 0.0, vn2 = 0.0, vd2 = 0.0;
    std::vector<double> en(kReplicates), ed(kReplicates);
    for (int r = 0; r < kReplicates; ++r) {
      en[r] = vol * sn[r] / static_cast<double>(cnt[r]);
      ed[r] = vol * sd[r] / static_cast<double>(cnt[r]);
      mn += en[r];
      md += ed[r];
    }
    mn /= kReplicates;
    md /= kReplicates;
    for (int r = 0; r < kReplicates; ++r) {
      vn2 += (en[r] - mn) * (en[r] - mn);
      vd2 += (ed[r] - md) * (ed[r] - md);
    }
    const double sen = std::sqrt(vn2 / (kReplicates - 1) / kReplicates);
    const double sed = std::sqrt(vd2 / (kReplicates - 1) / kReplicates);
    out.num = {mn, sen, evals, true};
    out.den = {md, sed, evals, true};
    const double rel = (mn != 0.0 ? sen / std::abs(mn) : 0.0) + (md != 0.0 ? sed / std::abs(md) : 0.0);
    if (md > 0.0 && rel <= q.tol) break;
    if (evals + 2 * N * kReplicates > q.max_evals) {
      out.num.converged = out.den.converged = false;
      break;
    }
    N *= 2;
  }
  return out;
}

QuotientResult quotient(const ProblemSpec& spec, const TrialFunction& phi, const QuadratureSpec& q, const Term& tn,
                        const Term& td) {
  validate(q);
  require(phi.kind != TrialKind::Product || spec.body.dim() >= 1, "product trial needs dim K >= 1");
  QuotientResult res;
  res.route = resolve_route(spec, phi, q.method);
  check_support(phi, res.route);
  quad::Result num, den;
  switch (res.route) {
    case Route::Radial1D: {
      auto pr = radial_route(spec, phi, tn, td, q);
      num = pr.num;
      den = pr.den;
      break;
    }
    case Route::TensorGrid: {
      auto pr = tensor_route(spec, phi, tn, td, q);
      num = pr.num;
      den = pr.den;
      break;
    }
    default: {
      auto mc = mc_route(spec, phi, tn, td, q);
      num = mc.num;
      den = mc.den;
    }
  }
  if (!(den.value > 0.0) || !std::isfinite(den.value))
    throw NumericError("denominator underflow: trial vanishes on its support");
  if (!std::isfinite(num.value)) throw NumericError("divergent numerator");
  res.numerator = num.value;
  res.denominator = den.value;
  res.quotient = num.value / den.value;
  double rn = num.value != 0.0 ? num.error / std::abs(num.value) : 0.0;
  res.error = std::abs(res.quotient) * (rn + den.error / den.value);
  res.evals = res.route == Route::MonteCarlo ? num.evals : num.evals + den.evals;
  res.converged = num.converged && den.converged;
  return res;
}

}  // namespace

std::string to_string(Route r) {
  switch (r) {
    case Route::Radial1D: return "radial-1d";
    case Route::TensorGrid: return "tensor-grid";
    case Route::MonteCarlo: return "monte-carlo";
    default: return "auto";
  }
}

Route parse_route(const std::string& s) {
  if (s == "auto") return Route::Auto;
  if (s == "radial-1d") return Route::Radial1D;
  if (s == "tensor-grid") return Route::TensorGrid;
  if (s == "monte-carlo") return Route::MonteCarlo;
  throw ConfigError("unknown quadrature method '" + s + "'");
}

std::string to_string(HStrategy h) {
  switch (h) {
    case HStrategy::Analytic: return "analytic";
    case HStrategy::Grushin: return "grushin";
    case HStrategy::FiniteDifference: return "finite-difference";
    default: return "auto";
  }
}

void validate(const QuadratureSpec& q) {
  require(q.tol > 0.0 && q.tol <= 1e-2, "quadrature tolerance must lie in (0, 1e-2]");
  require(q.max_evals >= 1000, "max_evals must be >= 1000");
}

double sphere_area(int m) {
  require(m >= 1, "sphere_area needs m >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m);
}

Route resolve_route(const ProblemSpec& spec, const TrialFunction& phi, Route requested) {
  const std::string kind = spec.body.kind();
  const bool radial_ok = phi.kind != TrialKind::Product && !phi.tangential && (kind == "point" || kind == "ball");
  const bool tensor_ok = phi.kind == TrialKind::Product && phi.tangential_inside_K;
  switch (requested) {
    case Route::Radial1D:
      if (!radial_ok) throw ConfigError("radial-1d route needs an untruncated radial trial and K a point or ball");
      return requested;
    case Route::TensorGrid:
      if (!tensor_ok) throw ConfigError("tensor-grid route needs a product trial with tangential support in K");
      return requested;
    case Route::MonteCarlo: return requested;
    default: return radial_ok ? Route::Radial1D : tensor_ok ? Route::TensorGrid : Route::MonteCarlo;
  }
}

double weighted_operator_apply(const ProblemSpec& spec, const TrialFunction& phi, const Vec& x, HStrategy strategy) {
  require(x.size() == spec.d(), "point dimension mismatch");
  const bool radial = phi.kind != TrialKind::Product && !phi.tangential;
  const bool grushin_ok = phi.kind == TrialKind::Product && phi.tangential_inside_K;
  if (strategy == HStrategy::Auto)
    strategy = radial ? HStrategy::Analytic : grushin_ok ? HStrategy::Grushin : HStrategy::FiniteDifference;
  switch (strategy) {
    case HStrategy::Analytic: {
      if (!radial) throw ConfigError("analytic H needs a radial trial without localizer");
      double s = distance(spec.body, x);
      if (!(s > 0.0)) throw NumericError("H evaluated on K");
      return radial_H(spec.weights, phi, s, laplacian_distance_sq(spec.body, x));
    }
    case HStrategy::Grushin:
      if (!grushin_ok) throw ConfigError("Grushin split needs a product trial with tangential support in K");
      return grushin_H(spec, phi, x);
    default: return fd_H(spec, phi, x);
  }
}

QuotientResult hardy_quotient(const ProblemSpec& spec, const TrialFunction& phi, const QuadratureSpec& quad) {
  const double p = spec.p;
  return quotient(spec, phi, quad, {Field::Grad, 1.0, 0.0, p}, {Field::Value, 1.0, -p, p});
}

QuotientResult hardy_directional_quotient(const ProblemSpec& spec, const TrialFunction& phi,
                                          const QuadratureSpec& quad) {
  const double p = spec.p;
  return quotient(spec, phi, quad, {Field::Dir, 1.0, 0.0, p}, {Field::Value, 1.0, -p, p});
}

QuotientResult rellich_quotient(const ProblemSpec& spec, const TrialFunction& phi, const QuadratureSpec& quad) {
  const double p = spec.p;
  if (phi.normal.smoothness() == Smoothness::C0 || (phi.tangential && phi.tangential->smoothness() == Smoothness::C0))
    throw ConfigError("non-C2 trial: H phi carries a singular part");
  return quotient(spec, phi, quad, {Field::H, 0.0, 0.0, p}, {Field::Value, p, -2.0 * p, p});
}

double lambda_split(double s, double t, double lambda, double p) {
  require(s >= 0.0 && t >= 0.0, "lambda_split needs s, t >= 0");
  require(lambda > 0.0 && lambda < 1.0, "lambda must lie in (0, 1)");
  require(p > 1.0, "lambda_split needs p > 1");
  return std::pow(1.0 - lambda, -(p - 1.0)) * std::pow(s, p) + std::pow(lambda, -(p - 1.0)) * std::pow(t, p);
}

double split_equality_point(double s, double t, double p) {
  require(s >= 0.0 && t >= 0.0 && s + t > 0.0, "split_equality_point needs s, t >= 0, s + t > 0");
  require(p > 1.0, "split_equality_point needs p > 1");
  return t / (s + t);
}

SplitBound hardy_split_bound(const ProblemSpec& spec, const TrialFunction& phi, double beta, double lambda,
                             const QuadratureSpec& quad) {
  if (spec.weights.delta != spec.weights.delta_prime)
    throw PreconditionError("split bound needs the pure power weight (delta = delta')");
  require(beta >= 0.0, "beta must be >= 0");
  require(lambda > 0.0 && lambda < 1.0, "lambda must lie in (0, 1)");
  const double p = spec.p;
  require(p > 1.0, "split bound needs p > 1");
  SplitBound sb;
  sb.ratio = quotient(spec, phi, quad, {Field::Grad, 0.0, p - beta, p}, {Field::Value, 0.0, -beta, p});
  sb.first_term = std::pow(1.0 - lambda, -(p - 1.0)) * std::pow(std::abs((beta + spec.weights.delta - p) / p), p);
  sb.second_term = std::pow(lambda, -(p - 1.0)) * sb.ratio.quotient;
  sb.bound = sb.first_term + sb.second_term;
  return sb;
}

Lemma31Residual lemma31_residual(const ProblemSpec& spec, double alpha, double alpha_prime,
                                 const std::vector<Vec>& points, HStrategy strategy) {
  Lemma31Residual out;
  const ConstantInputs in = spec.inputs();
  out.b_alpha = b_alpha(in.dd(), in.dmin(), alpha, alpha_prime);
  TrialFunction chi = radial_trial(rellich_profile(alpha, alpha_prime));
  out.min_residual = std::numeric_limits<double>::infinity();
  out.min_scaled = std::numeric_limits<double>::infinity();
  for (const Vec& x : points) {
    double s = distance(spec.body, x);
    if (!(s > 0.0)) throw NumericError("residual point lies in K");
    double H = weighted_operator_apply(spec, chi, x, strategy);
    double rhs = out.b_alpha * weight_value(spec.weights, s) * chi.g(s) / (s * s);
    double r = H - rhs;
    double scale = std::abs(H) + std::abs(rhs);
    double scaled = scale > 0.0 ? r / scale : 0.0;
    if (r < out.min_residual) {
      out.min_residual = r;
      out.worst_point = x;
    }
    out.min_scaled = std::min(out.min_scaled, scaled);
    ++out.points;
  }
  return out;
}

}  // namespace hrv
