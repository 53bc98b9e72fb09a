#include <cmath>
#include <limits>

#include "hrv/errors.hpp"
#include "hrv/geometry.hpp"
#include "hrv/rng.hpp"

namespace hrv {

GeometrySuite geometry_suite(const ConvexBody& K, int samples, std::uint64_t seed) {
  require(samples >= 1, "geometry suite needs samples >= 1");
  const int d = K.ambient_dim();
  const int dd = d - boundary_dimension(K);
  auto [blo, bhi] = K.bounding_box();
  double extent = 0.0;
  for (int i = 0; i < d; ++i)
    if (std::isfinite(blo(i)) && std::isfinite(bhi(i))) extent = std::max(extent, 0.5 * (bhi(i) - blo(i)));
  const double R = 1.0 + std::min(extent, 10.0);
  const Vec c = K.hull().offset;
  auto g = make_engine(seed, 0x6e0);
  std::normal_distribution<double> nd;
  auto random_point = [&](double grow = 1.0) {
    Vec u(d);
    for (int i = 0; i < d; ++i) u(i) = nd(g);
    return Vec(c + grow * R * std::pow(10.0, uniform(g, -2.0, 1.0)) * u.normalized());
  };
  const std::vector<double> grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  GeometrySuite s;
  s.samples = samples;
  s.min_trace_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < samples; ++t) {
    Vec x = random_point();
    Projection px = project_ex(K, x);
    Vec n = px.point;
    s.max_idempotence = std::max(s.max_idempotence, (project(K, n) - n).norm() / (1.0 + x.norm()));
    Vec y = project(K, random_point());
    double scale = 1.0 + x.norm() + y.norm();
    s.max_obtuse = std::max(s.max_obtuse, (x - n).dot(y - n) / (scale * scale));
    // The distance checks need x in Omega; redraw with a widening radius when
    // x hit K (unbounded bodies can fill most of the sampling ball).
    for (int a = 0; a < 32 && px.inside; ++a) {
      x = random_point(std::pow(1.5, a));
      px = project_ex(K, x);
    }
    if (px.inside) continue;
    s.max_grad_defect = std::max(s.max_grad_defect, std::abs(distance_gradient(K, x).norm() - 1.0));
    double h = default_hessian_step(K, x);
    if (distance(K, x) > 2.0 * h) {
      double tr = hessian_distance_sq(K, x, h).trace();
      s.min_trace_margin = std::min(s.min_trace_margin, tr - 2.0 * dd);
    }
    // A far partner first; segments meeting K are outside the claim, so fall
    // back to a partner inside the ball B(x, d(x)), which lies in Omega.
    bool done = false;
    for (int a = 0; a < 3 && !done; ++a) {
      try {
        double v = segment_convexity_check(K, x, random_point(), grid);
        s.max_convexity_violation = std::max(s.max_convexity_violation, v);
        done = true;
      } catch (const NumericError&) {
      }
    }
    if (!done) {
      Vec u(d);
      for (int i = 0; i < d; ++i) u(i) = nd(g);
      Vec z = x + 0.99 * uniform01(g) * distance(K, x) * u.normalized();
      s.max_convexity_violation = std::max(s.max_convexity_violation, segment_convexity_check(K, x, z, grid));
    }
    ++s.segments_checked;
  }
  return s;
}

}  // namespace hrv
