#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hrv {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct SinglePoint {
  Vec point;
};
struct AffineSubspace {
  Vec offset;
  std::vector<Vec> basis;  // orthonormal
};
// {x : <normal, x> <= offset}
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};
struct HPolytope {
  std::vector<Halfspace> facets;
};
struct VPolytope {
  std::vector<Vec> vertices;
};
struct Ball {
  Vec center;
  double radius = 1.0;
};
// Entries may be infinite, which gives strips, orthants and slabs.
struct Box {
  Vec lower, upper;
};

using BodyData = std::variant<SinglePoint, AffineSubspace, Halfspace, HPolytope, VPolytope, Ball, Box>;

// Orthonormal description of the affine hull A_K.
struct AffineHull {
  Vec offset;
  Mat basis;  // d x k, orthonormal columns
};

class ConvexBody {
 public:
  static ConvexBody point(Vec p);
  static ConvexBody affine(Vec offset, std::vector<Vec> basis);
  static ConvexBody halfspace(Vec normal, double offset);
  static ConvexBody hpolytope(std::vector<Halfspace> facets);
  static ConvexBody vpolytope(std::vector<Vec> vertices);
  static ConvexBody ball(Vec center, double radius);
  static ConvexBody box(Vec lower, Vec upper);
  // Convenience shapes.
  static ConvexBody segment(Vec a, Vec b) { return vpolytope({std::move(a), std::move(b)}); }
  static ConvexBody line(int d, int axis = 0);

  int ambient_dim() const { return d_; }
  const BodyData& data() const { return data_; }
  std::string kind() const;
  bool bounded() const;
  int dim() const { return static_cast<int>(hull_.basis.cols()); }
  const AffineHull& hull() const { return hull_; }
  // Axis aligned bounding box; infinite entries for unbounded bodies.
  std::pair<Vec, Vec> bounding_box() const;

 private:
  explicit ConvexBody(BodyData data);
  void finish();
  BodyData data_;
  int d_ = 0;
  AffineHull hull_;
};

struct Projection {
  Vec point;
  bool inside = false;  // x was already in K (projection returns x)
  // Dimension of the face whose relative interior contains n(x); equals the
  // trace of the Jacobian of the projection map for polyhedral bodies.
  int face_dim = 0;
};

Projection project_ex(const ConvexBody& K, const Vec& x);
Vec project(const ConvexBody& K, const Vec& x);
double distance(const ConvexBody& K, const Vec& x);
bool contains(const ConvexBody& K, const Vec& x);
// Unit vector (x - n(x)) / |x - n(x)|; throws NumericError for x in K.
Vec distance_gradient(const ConvexBody& K, const Vec& x);
// Laplacian of d_Gamma^2 from the Jacobian of the projection, 2 (d - tr Dn).
double laplacian_distance_sq(const ConvexBody& K, const Vec& x);

// Default finite-difference step max(1e-4, 1e-3 d_Gamma(x)), clipped so the
// stencil stays inside Omega.
double default_hessian_step(const ConvexBody& K, const Vec& x);
Mat hessian_distance_sq(const ConvexBody& K, const Vec& x, double h);

int boundary_dimension(const ConvexBody& K);

struct KInfEstimate {
  double estimate = 0.0;
  std::optional<int> exact;
  int rounded = 0;
  bool confident = false;
  double slope_stderr = 0.0;
  std::vector<double> radii, volumes;
};

// Exact value when the variant admits it (recession-cone dimension).
std::optional<int> dimension_at_infinity_exact(const ConvexBody& K);
// Monte Carlo volume growth of K inside A_K with a log-log slope fit over the
// top two decades of r_values. The exact value is attached when available.
KInfEstimate dimension_at_infinity(const ConvexBody& K, const std::vector<double>& r_values, int n_samples,
                                   std::uint64_t seed);

// max over the grid of d(l y + (1-l) z) - l d(y) - (1-l) d(z).
double segment_convexity_check(const ConvexBody& K, const Vec& y, const Vec& z, const std::vector<double>& grid);

struct GeometryReport {
  int d = 0;
  int k = 0;
  int d_H = 0;
  std::optional<int> k_inf;   // exact value when known
  double k_inf_estimate = 0;  // equals k_inf when exact
  bool k_inf_confident = true;
};

GeometryReport geometry_report(const ConvexBody& K);

// Distance from a point of the ray c + t u (u unit, c in K) to the boundary
// along the ray: sup{t : c + t u in K}, possibly infinite.
double ray_extent(const ConvexBody& K, const Vec& c, const Vec& u);
// A point in the relative interior of K (deterministic).
Vec relative_interior_point(const ConvexBody& K);

// Randomised checks of the projection and distance facts on one body.
struct GeometrySuite {
  int samples = 0;
  double max_idempotence = 0.0;     // |n(n(x)) - n(x)| / (1 + |x|)
  double max_obtuse = 0.0;          // max <x - n(x), y - n(x)> / scale^2, y in K
  double max_grad_defect = 0.0;     // ||grad d| - 1|
  double min_trace_margin = 0.0;    // tr Hess(d^2) - 2 (d - d_H), finite differences
  double max_convexity_violation = 0.0;
  int segments_checked = 0;
};

GeometrySuite geometry_suite(const ConvexBody& K, int samples, std::uint64_t seed);

}  // namespace hrv
