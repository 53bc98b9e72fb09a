#include "hrv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hrv/errors.hpp"
#include "hrv/qp.hpp"
#include "hrv/quadrature.hpp"
#include "hrv/rng.hpp"

namespace hrv {

namespace {

// Normals already unit up to rounding are kept as given, so serialising and
// reloading a body reproduces it bit for bit.
bool unit_norm(double n) { return std::abs(n - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon(); }

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_dim(const Vec& v, int d, const char* what) {
  if (v.size() != d) throw ConfigError(std::string("dimension mismatch in ") + what);
}

void check_finite(const Vec& v, const char* what) {
  if (!v.allFinite()) throw ConfigError(std::string("non-finite entries in ") + what);
}

// Orthonormal basis of the column span, rank decided relative to the largest
// singular value.
Mat orthonormal_span(const Mat& M, double rel_tol = 1e-9) {
  if (M.cols() == 0) return Mat(M.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  double smax = s.size() ? s(0) : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * std::max(smax, 1e-300) && s(i) > 1e-300) ++r;
  return svd.matrixU().leftCols(r);
}

Mat facet_matrix(const HPolytope& P, Vec& b) {
  const int m = static_cast<int>(P.facets.size());
  const int d = static_cast<int>(P.facets[0].normal.size());
  Mat A(m, d);
  b.resize(m);
  for (int i = 0; i < m; ++i) {
    A.row(i) = P.facets[i].normal.transpose();
    b(i) = P.facets[i].offset;
  }
  return A;
}

int active_rank(const HPolytope& P, const std::vector<int>& active) {
  if (active.empty()) return 0;
  const int d = static_cast<int>(P.facets[0].normal.size());
  Mat N(d, static_cast<Eigen::Index>(active.size()));
  for (std::size_t j = 0; j < active.size(); ++j) N.col(static_cast<Eigen::Index>(j)) = P.facets[active[j]].normal;
  return static_cast<int>(orthonormal_span(N).cols());
}

}  // namespace

ConvexBody::ConvexBody(BodyData data) : data_(std::move(data)) { finish(); }

ConvexBody ConvexBody::point(Vec p) {
  check_finite(p, "point");
  return ConvexBody(SinglePoint{std::move(p)});
}

ConvexBody ConvexBody::affine(Vec offset, std::vector<Vec> basis) {
  check_finite(offset, "affine offset");
  const int d = static_cast<int>(offset.size());
  require(static_cast<int>(basis.size()) <= d, "affine basis larger than ambient dimension");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    check_dim(basis[i], d, "affine basis");
    for (std::size_t j = 0; j <= i; ++j) {
      double g = basis[i].dot(basis[j]);
      double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - want) > 1e-12) throw ConfigError("affine basis is not orthonormal to 1e-12");
    }
  }
  return ConvexBody(AffineSubspace{std::move(offset), std::move(basis)});
}

ConvexBody ConvexBody::halfspace(Vec normal, double offset) {
  check_finite(normal, "halfspace normal");
  double n = normal.norm();
  require(n > 0.0 && std::isfinite(offset), "halfspace normal must be nonzero");
  if (unit_norm(n)) return ConvexBody(Halfspace{std::move(normal), offset});
  return ConvexBody(Halfspace{normal / n, offset / n});
}

ConvexBody ConvexBody::hpolytope(std::vector<Halfspace> facets) {
  require(!facets.empty(), "polytope needs at least one facet");
  const int d = static_cast<int>(facets[0].normal.size());
  for (auto& f : facets) {
    check_dim(f.normal, d, "polytope facet");
    check_finite(f.normal, "polytope facet");
    double n = f.normal.norm();
    require(n > 0.0 && std::isfinite(f.offset), "polytope facet normal must be nonzero");
    if (unit_norm(n)) continue;
    f.normal /= n;
    f.offset /= n;
  }
  return ConvexBody(HPolytope{std::move(facets)});
}

ConvexBody ConvexBody::vpolytope(std::vector<Vec> vertices) {
  require(!vertices.empty(), "polytope needs at least one vertex");
  const int d = static_cast<int>(vertices[0].size());
  for (const auto& v : vertices) {
    check_dim(v, d, "polytope vertex");
    check_finite(v, "polytope vertex");
  }
  return ConvexBody(VPolytope{std::move(vertices)});
}

ConvexBody ConvexBody::ball(Vec center, double radius) {
  check_finite(center, "ball center");
  require(radius > 0.0 && std::isfinite(radius), "ball radius must be strictly positive");
  return ConvexBody(Ball{std::move(center), radius});
}

ConvexBody ConvexBody::box(Vec lower, Vec upper) {
  require(lower.size() == upper.size(), "dimension mismatch in box");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    require(!std::isnan(lower(i)) && !std::isnan(upper(i)), "box bounds must not be NaN");
    require(lower(i) <= upper(i), "box needs lower <= upper componentwise");
    require(lower(i) < kInf && upper(i) > -kInf, "box bound of the wrong sign infinity");
  }
  bool all_inf = true;
  for (Eigen::Index i = 0; i < lower.size(); ++i)
    if (std::isfinite(lower(i)) || std::isfinite(upper(i))) all_inf = false;
  require(!all_inf, "box equals the whole space");
  return ConvexBody(Box{std::move(lower), std::move(upper)});
}

ConvexBody ConvexBody::line(int d, int axis) {
  Vec e = Vec::Zero(d);
  e(axis) = 1.0;
  return affine(Vec::Zero(d), {e});
}

void ConvexBody::finish() {
  std::visit(overloaded{
                 [&](const SinglePoint& s) {
                   d_ = static_cast<int>(s.point.size());
                   hull_ = {s.point, Mat(d_, 0)};
                 },
                 [&](const AffineSubspace& a) {
                   d_ = static_cast<int>(a.offset.size());
                   Mat B(d_, static_cast<Eigen::Index>(a.basis.size()));
                   for (std::size_t i = 0; i < a.basis.size(); ++i) B.col(static_cast<Eigen::Index>(i)) = a.basis[i];
                   hull_ = {a.offset, B};
                 },
                 [&](const Halfspace& h) {
                   d_ = static_cast<int>(h.normal.size());
                   hull_ = {h.normal * (h.offset - 1.0), Mat::Identity(d_, d_)};
                 },
                 [&](const HPolytope& P) {
                   d_ = static_cast<int>(P.facets[0].normal.size());
                   Vec b;
                   Mat A = facet_matrix(P, b);
                   auto g = make_engine(0x9e11u, static_cast<std::uint64_t>(d_));
                   std::normal_distribution<double> nd;
                   const double scale = 10.0 * (1.0 + b.cwiseAbs().maxCoeff());
                   const int ns = 4 * d_ + 8;
                   std::vector<Vec> pts;
                   for (int s = 0; s < ns; ++s) {
                     Vec x(d_);
                     for (int i = 0; i < d_; ++i) x(i) = scale * nd(g);
                     auto pr = qp::project_polyhedron(A, b, x);
                     if (!pr.feasible) throw ConfigError("infeasible polytope (empty K)");
                     pts.push_back(pr.point);
                   }
                   Vec mean = Vec::Zero(d_);
                   for (const auto& p : pts) mean += p;
                   mean /= ns;
                   Mat D(d_, ns);
                   for (int s = 0; s < ns; ++s) D.col(s) = pts[s] - mean;
                   hull_ = {mean, orthonormal_span(D)};
                 },
                 [&](const VPolytope& V) {
                   d_ = static_cast<int>(V.vertices[0].size());
                   Vec mean = Vec::Zero(d_);
                   for (const auto& v : V.vertices) mean += v;
                   mean /= static_cast<double>(V.vertices.size());
                   Mat D(d_, static_cast<Eigen::Index>(V.vertices.size()));
                   for (std::size_t i = 0; i < V.vertices.size(); ++i)
                     D.col(static_cast<Eigen::Index>(i)) = V.vertices[i] - mean;
                   hull_ = {mean, orthonormal_span(D)};
                 },
                 [&](const Ball& b) {
                   d_ = static_cast<int>(b.center.size());
                   hull_ = {b.center, Mat::Identity(d_, d_)};
                 },
                 [&](const Box& bx) {
                   d_ = static_cast<int>(bx.lower.size());
                   std::vector<int> free;
                   Vec off(d_);
                   for (int i = 0; i < d_; ++i) {
                     double lo = bx.lower(i), hi = bx.upper(i);
                     if (lo < hi) free.push_back(i);
                     if (std::isfinite(lo) && std::isfinite(hi)) off(i) = 0.5 * (lo + hi);
                     else if (std::isfinite(lo)) off(i) = lo + 1.0;
                     else if (std::isfinite(hi)) off(i) = hi - 1.0;
                     else off(i) = 0.0;
                   }
                   Mat B = Mat::Zero(d_, static_cast<Eigen::Index>(free.size()));
                   for (std::size_t j = 0; j < free.size(); ++j) B(free[j], static_cast<Eigen::Index>(j)) = 1.0;
                   hull_ = {off, B};
                 },
             },
             data_);
}

std::string ConvexBody::kind() const {
  return std::visit(overloaded{
                        [](const SinglePoint&) { return std::string("point"); },
                        [](const AffineSubspace&) { return std::string("affine"); },
                        [](const Halfspace&) { return std::string("halfspace"); },
                        [](const HPolytope&) { return std::string("hpolytope"); },
                        [](const VPolytope&) { return std::string("vpolytope"); },
                        [](const Ball&) { return std::string("ball"); },
                        [](const Box&) { return std::string("box"); },
                    },
                    data_);
}

std::pair<Vec, Vec> ConvexBody::bounding_box() const {
  Vec lo = Vec::Constant(d_, -kInf), hi = Vec::Constant(d_, kInf);
  std::visit(overloaded{
                 [&](const SinglePoint& s) { lo = hi = s.point; },
                 [&](const VPolytope& V) {
                   lo = hi = V.vertices[0];
                   for (const auto& v : V.vertices) {
                     lo = lo.cwiseMin(v);
                     hi = hi.cwiseMax(v);
                   }
                 },
                 [&](const Ball& b) {
                   lo = b.center.array() - b.radius;
                   hi = b.center.array() + b.radius;
                 },
                 [&](const Box& bx) {
                   lo = bx.lower;
                   hi = bx.upper;
                 },
                 [&](const auto&) {},
             },
             data_);
  return {lo, hi};
}

bool ConvexBody::bounded() const {
  auto [lo, hi] = bounding_box();
  if (lo.allFinite() && hi.allFinite()) return true;
  if (const auto* P = std::get_if<HPolytope>(&data_)) {
    (void)P;
    return dimension_at_infinity_exact(*this).value_or(1) == 0;
  }
  return false;
}

Projection project_ex(const ConvexBody& K, const Vec& x) {
  check_dim(x, K.ambient_dim(), "projection point");
  const int d = K.ambient_dim();
  Projection out;
  std::visit(overloaded{
                 [&](const SinglePoint& s) {
                   out.point = s.point;
                   out.face_dim = 0;
                 },
                 [&](const AffineSubspace&) {
                   const auto& H = K.hull();
                   out.point = H.offset + H.basis * (H.basis.transpose() * (x - H.offset));
                   out.face_dim = static_cast<int>(H.basis.cols());
                 },
                 [&](const Halfspace& h) {
                   double s = h.normal.dot(x) - h.offset;
                   out.point = s > 0 ? Vec(x - s * h.normal) : x;
                   out.face_dim = s > 0 ? d - 1 : d;
                 },
                 [&](const HPolytope& P) {
                   Vec b;
                   Mat A = facet_matrix(P, b);
                   auto pr = qp::project_polyhedron(A, b, x);
                   if (!pr.feasible) throw NumericError("infeasible polytope (empty K)");
                   out.point = pr.point;
                   out.face_dim = d - active_rank(P, pr.active);
                 },
                 [&](const VPolytope& V) {
                   auto pr = qp::project_hull(V.vertices, x);
                   out.point = pr.point;
                   out.face_dim = static_cast<int>(pr.support.size()) - 1;
                 },
                 [&](const Ball& b) {
                   Vec v = x - b.center;
                   double r = v.norm();
                   out.point = r > b.radius ? Vec(b.center + (b.radius / r) * v) : x;
                   out.face_dim = r > b.radius ? d - 1 : d;
                 },
                 [&](const Box& bx) {
                   out.point = x.cwiseMax(bx.lower).cwiseMin(bx.upper);
                   int inside = 0;
                   for (int i = 0; i < d; ++i)
                     if (x(i) > bx.lower(i) && x(i) < bx.upper(i)) ++inside;
                   out.face_dim = inside;
                 },
             },
             K.data());
  const double dist = (x - out.point).norm();
  if (dist <= 1e-12 * (1.0 + x.norm())) {
    out.inside = true;
    out.point = x;
  }
  return out;
}

Vec project(const ConvexBody& K, const Vec& x) { return project_ex(K, x).point; }

double distance(const ConvexBody& K, const Vec& x) {
  auto pr = project_ex(K, x);
  return pr.inside ? 0.0 : (x - pr.point).norm();
}

bool contains(const ConvexBody& K, const Vec& x) { return project_ex(K, x).inside; }

Vec distance_gradient(const ConvexBody& K, const Vec& x) {
  auto pr = project_ex(K, x);
  if (pr.inside) throw NumericError("distance gradient requested at a point of K");
  Vec g = x - pr.point;
  return g / g.norm();
}

double laplacian_distance_sq(const ConvexBody& K, const Vec& x) {
  auto pr = project_ex(K, x);
  if (pr.inside) throw NumericError("Laplacian of d^2 requested at a point of K");
  const int d = K.ambient_dim();
  if (const auto* b = std::get_if<Ball>(&K.data())) {
    double r = (x - b->center).norm();
    return 2.0 * (d - b->radius * (d - 1) / r);
  }
  return 2.0 * (d - pr.face_dim);
}

double default_hessian_step(const ConvexBody& K, const Vec& x) {
  double dist = distance(K, x);
  double h = std::max(1e-4, 1e-3 * dist);
  return std::min(h, dist / 3.0);
}

Mat hessian_distance_sq(const ConvexBody& K, const Vec& x, double h) {
  const int d = K.ambient_dim();
  check_dim(x, d, "Hessian point");
  require(h > 0.0, "Hessian step must be positive");
  double dist = distance(K, x);
  if (!(dist > 2.0 * h)) throw NumericError("step too large: stencil crosses the boundary");
  auto f = [&](const Vec& y) {
    double r = distance(K, y);
    return r * r;
  };
  const double f0 = f(x);
  Mat H(d, d);
  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e(i) = h;
    H(i, i) = (f(x + e) - 2.0 * f0 + f(x - e)) / (h * h);
    for (int j = 0; j < i; ++j) {
      Vec g = Vec::Zero(d);
      g(j) = h;
      double v = (f(x + e + g) - f(x + e - g) - f(x - e + g) + f(x - e - g)) / (4.0 * h * h);
      H(i, j) = H(j, i) = v;
    }
  }
  return H;
}

int boundary_dimension(const ConvexBody& K) {
  int k = K.dim();
  return k < K.ambient_dim() ? k : K.ambient_dim() - 1;
}

std::optional<int> dimension_at_infinity_exact(const ConvexBody& K) {
  const int d = K.ambient_dim();
  return std::visit(overloaded{
                        [](const SinglePoint&) -> std::optional<int> { return 0; },
                        [&](const AffineSubspace&) -> std::optional<int> { return K.dim(); },
                        [&](const Halfspace&) -> std::optional<int> { return d; },
                        [](const VPolytope&) -> std::optional<int> { return 0; },
                        [](const Ball&) -> std::optional<int> { return 0; },
                        [&](const Box& bx) -> std::optional<int> {
                          int n = 0;
                          for (int i = 0; i < d; ++i)
                            if (!std::isfinite(bx.lower(i)) || !std::isfinite(bx.upper(i))) ++n;
                          return n;
                        },
                        [&](const HPolytope& P) -> std::optional<int> {
                          // Recession cone {y : A y <= 0}; project Gaussian vectors onto it
                          // and take the rank of the images.
                          Vec b;
                          Mat A = facet_matrix(P, b);
                          Vec zero = Vec::Zero(A.rows());
                          auto g = make_engine(0xc0e5u, static_cast<std::uint64_t>(d));
                          std::normal_distribution<double> nd;
                          const int ns = 8 * d + 16;
                          Mat imgs(d, ns);
                          for (int s = 0; s < ns; ++s) {
                            Vec x(d);
                            for (int i = 0; i < d; ++i) x(i) = nd(g);
                            imgs.col(s) = qp::project_polyhedron(A, zero, x).point;
                          }
                          if (imgs.norm() < 1e-12) return 0;
                          return static_cast<int>(orthonormal_span(imgs, 1e-8).cols());
                        },
                    },
                    K.data());
}

Vec relative_interior_point(const ConvexBody& K) { return K.hull().offset; }

double ray_extent(const ConvexBody& K, const Vec& c, const Vec& u) {
  return std::visit(overloaded{
                        [](const SinglePoint&) { return 0.0; },
                        [](const AffineSubspace&) { return kInf; },
                        [&](const Halfspace& h) {
                          double a = h.normal.dot(u);
                          return a > 1e-15 ? std::max(0.0, (h.offset - h.normal.dot(c)) / a) : kInf;
                        },
                        [&](const HPolytope& P) {
                          double t = kInf;
                          for (const auto& f : P.facets) {
                            double a = f.normal.dot(u);
                            if (a > 1e-15) t = std::min(t, std::max(0.0, (f.offset - f.normal.dot(c)) / a));
                          }
                          return t;
                        },
                        [&](const Ball& b) {
                          Vec w = c - b.center;
                          double bb = w.dot(u), cc = w.squaredNorm() - b.radius * b.radius;
                          double disc = bb * bb - cc;
                          return disc > 0 ? std::max(0.0, -bb + std::sqrt(disc)) : 0.0;
                        },
                        [&](const Box& bx) {
                          double t = kInf;
                          for (Eigen::Index i = 0; i < u.size(); ++i) {
                            if (u(i) > 1e-15) t = std::min(t, std::max(0.0, (bx.upper(i) - c(i)) / u(i)));
                            else if (u(i) < -1e-15) t = std::min(t, std::max(0.0, (bx.lower(i) - c(i)) / u(i)));
                          }
                          return t;
                        },
                        [&](const VPolytope& V) {
                          double hi = 0.0;
                          for (const auto& v : V.vertices) hi = std::max(hi, (v - c).norm());
                          double lo = 0.0;
                          if (!contains(K, c + hi * u)) {
                            for (int it = 0; it < 80; ++it) {
                              double mid = 0.5 * (lo + hi);
                              if (contains(K, c + mid * u)) lo = mid;
                              else hi = mid;
                            }
                            return lo;
                          }
                          return hi;
                        },
                    },
                    K.data());
}

KInfEstimate dimension_at_infinity(const ConvexBody& K, const std::vector<double>& r_values, int n_samples,
                                   std::uint64_t seed) {
  require(r_values.size() >= 2, "k_inf needs at least two radii");
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    require(r_values[i] > 0.0, "k_inf radii must be positive");
    if (i) require(r_values[i] > r_values[i - 1], "k_inf radii must be increasing");
  }
  require(r_values.back() / r_values.front() >= 100.0 * (1.0 - 1e-12), "k_inf radii must span at least two decades");
  if (n_samples < 64) throw NumericError("sample budget too small for a k_inf estimate (need >= 64)");

  KInfEstimate out;
  out.exact = dimension_at_infinity_exact(K);
  const int k = K.dim();
  if (k == 0) {
    out.estimate = 0.0;
    out.rounded = 0;
    out.confident = true;
    out.radii = r_values;
    out.volumes.assign(r_values.size(), 0.0);
    return out;
  }
  const Mat& B = K.hull().basis;
  const Vec c = relative_interior_point(K);

  const double surface = 2.0 * std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k);
  if (k == 2) {
    // Planar hull: the angular integral of min(rho, r)^2 has spikes of width
    // ~1/r along unbounded directions, which random angles miss; integrate
    // it adaptively instead. n_samples sets the number of initial panels.
    const int panels = std::clamp(n_samples / 16, 64, 4096);
    std::vector<double> knots(panels + 1);
    for (int i = 0; i <= panels; ++i) knots[i] = 2.0 * std::numbers::pi * i / panels;
    for (double r : r_values) {
      auto f = [&](double th) {
        Vec w(2);
        w << std::cos(th), std::sin(th);
        double t = std::min(ray_extent(K, c, B * w), r);
        return t * t;
      };
      quad::Result q = quad::integrate_knots(f, knots, 1e-9, 0.0, 4000000);
      out.radii.push_back(r);
      out.volumes.push_back(0.5 * q.value);
    }
  } else {
    std::vector<double> rho;
    if (k == 1) {
      rho = {ray_extent(K, c, B.col(0)), ray_extent(K, c, -B.col(0))};
    } else {
      auto g = make_engine(seed, 0x6b1full);
      std::normal_distribution<double> nd;
      rho.reserve(static_cast<std::size_t>(n_samples));
      for (int i = 0; i < n_samples; ++i) {
        Vec w(k);
        for (int j = 0; j < k; ++j) w(j) = nd(g);
        rho.push_back(ray_extent(K, c, B * w.normalized()));
      }
    }
    for (double r : r_values) {
      // |K cap B_r(c)| = (surface / k) * mean over directions of min(rho, r)^k
      double acc = 0.0;
      for (double t : rho) acc += std::pow(std::min(t, r), k);
      out.radii.push_back(r);
      out.volumes.push_back(surface / k * acc / static_cast<double>(rho.size()));
    }
  }

  // Least squares slope over the top two decades.
  const double rmin = r_values.back() / 100.0 * (1.0 - 1e-12);
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    if (r_values[i] >= rmin && out.volumes[i] > 0.0) {
      xs.push_back(std::log(r_values[i]));
      ys.push_back(std::log(out.volumes[i]));
    }
  }
  if (xs.size() < 2) {
    out.estimate = 0.0;
  } else {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    out.estimate = sxy / sxx;
    if (xs.size() > 2) {
      double rss = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        double e = ys[i] - (my + out.estimate * (xs[i] - mx));
        rss += e * e;
      }
      out.slope_stderr = std::sqrt(rss / (xs.size() - 2) / sxx);
    }
  }
  out.rounded = static_cast<int>(std::lround(out.estimate));
  out.confident = std::abs(out.estimate - out.rounded) <= 0.15;
  return out;
}

double segment_convexity_check(const ConvexBody& K, const Vec& y, const Vec& z, const std::vector<double>& grid) {
  check_dim(y, K.ambient_dim(), "segment endpoint");
  check_dim(z, K.ambient_dim(), "segment endpoint");
  if (y == z) return 0.0;
  const double dy = distance(K, y), dz = distance(K, z);
  double worst = -kInf;
  for (double l : grid) {
    require(l >= 0.0 && l <= 1.0, "segment grid values must lie in [0,1]");
    Vec x = l * y + (1.0 - l) * z;
    double dx = distance(K, x);
    if (dx <= 0.0) throw NumericError("segment intersects K");
    worst = std::max(worst, dx - (l * dy + (1.0 - l) * dz));
  }
  return worst;
}

GeometryReport geometry_report(const ConvexBody& K) {
  GeometryReport r;
  r.d = K.ambient_dim();
  r.k = K.dim();
  r.d_H = boundary_dimension(K);
  r.k_inf = dimension_at_infinity_exact(K);
  if (r.k_inf) {
    r.k_inf_estimate = *r.k_inf;
    r.k_inf_confident = true;
  } else {
    auto est = dimension_at_infinity(K, {1e2, 1e3, 1e4}, 200000, 0);
    r.k_inf_estimate = est.estimate;
    r.k_inf_confident = est.confident;
  }
  return r;
}

}  // namespace hrv
