#pragma once

#include <Eigen/Dense>
#include <vector>

namespace hrv::qp {

struct PolyhedronProjection {
  Eigen::VectorXd point;
  std::vector<int> active;  // constraints with positive multiplier at the solution
  bool feasible = true;
  int iterations = 0;
};

// Euclidean projection of x onto {y : A y <= b} by the Goldfarb-Idnani dual
// active-set method specialised to the identity Hessian. Rows of A are
// expected to have unit norm. Reports infeasibility instead of throwing.
PolyhedronProjection project_polyhedron(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                        const Eigen::VectorXd& x);

struct HullProjection {
  Eigen::VectorXd point;
  Eigen::VectorXd weights;   // barycentric weights over all input points
  std::vector<int> support;  // affinely independent corral at the optimum
};

// Nearest point to x in conv(points), Wolfe's minimum-norm-point algorithm.
HullProjection project_hull(const std::vector<Eigen::VectorXd>& points, const Eigen::VectorXd& x);

}  // namespace hrv::qp
