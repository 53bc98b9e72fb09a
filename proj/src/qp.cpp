#include "hrv/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hrv::qp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

PolyhedronProjection project_polyhedron(const MatrixXd& A, const VectorXd& b, const VectorXd& x) {
  const int m = static_cast<int>(A.rows());
  const int d = static_cast<int>(A.cols());
  const double inf = std::numeric_limits<double>::infinity();
  const double eps = 1e-13 * (1.0 + x.lpNorm<Eigen::Infinity>() + (m ? b.lpNorm<Eigen::Infinity>() : 0.0));

  PolyhedronProjection out;
  VectorXd y = x;
  std::vector<int> act;
  std::vector<double> u;
  auto slack = [&](int i) { return b(i) - A.row(i).dot(y); };

  const int max_iter = 50 * (m + d) + 100;
  for (int iter = 0; iter < max_iter; ++iter) {
    out.iterations = iter;
    int p = -1;
    double worst = -eps;
    for (int i = 0; i < m; ++i) {
      if (std::find(act.begin(), act.end(), i) != act.end()) continue;
      double s = slack(i);
      if (s < worst) {
        worst = s;
        p = i;
      }
    }
    if (p < 0) break;

    // Constraints in ">=" form: n.y >= c with n = -a, c = -b.
    VectorXd np = -A.row(p).transpose();
    std::vector<double> up = u;
    up.push_back(0.0);

    for (int inner = 0; inner < max_iter; ++inner) {
      const int q = static_cast<int>(act.size());
      VectorXd z, r(q);
      if (q == 0) {
        z = np;
      } else {
        MatrixXd N(d, q);
        for (int j = 0; j < q; ++j) N.col(j) = -A.row(act[j]).transpose();
        MatrixXd G = N.transpose() * N;
        r = G.ldlt().solve(N.transpose() * np);
        z = np - N * r;
      }
      double t1 = inf;
      int k = -1;
      for (int j = 0; j < q; ++j) {
        if (r(j) > 1e-14) {
          double t = up[j] / r(j);
          if (t < t1) {
            t1 = t;
            k = j;
          }
        }
      }
      const double sp = slack(p);
      if (sp >= -eps) {
        // Earlier partial steps already repaired p; keep the multipliers.
        up.pop_back();
        u = up;
        break;
      }
      const double zz = z.squaredNorm();
      const double t2 = zz > 1e-24 ? -sp / zz : inf;
      const double t = std::min(t1, t2);
      if (!std::isfinite(t)) {
        out.point = y;
        out.feasible = false;
        return out;
      }
      if (!std::isfinite(t2)) {
        for (int j = 0; j < q; ++j) up[j] -= t * r(j);
        up.back() += t;
        act.erase(act.begin() + k);
        up.erase(up.begin() + k);
        continue;
      }
      y += t * z;
      for (int j = 0; j < q; ++j) up[j] -= t * r(j);
      up.back() += t;
      if (t2 <= t1) {
        act.push_back(p);
        u = up;
        break;
      }
      act.erase(act.begin() + k);
      up.erase(up.begin() + k);
    }
  }

  out.point = y;
  for (std::size_t j = 0; j < act.size(); ++j)
    if (u[j] > 1e-14) out.active.push_back(act[j]);
  std::sort(out.active.begin(), out.active.end());
  return out;
}

namespace {

// Minimiser of |sum a_i P_i| over the affine hull of the corral columns.
VectorXd affine_minimizer(const MatrixXd& P) {
  const int q = static_cast<int>(P.cols());
  MatrixXd K = MatrixXd::Zero(q + 1, q + 1);
  K.topLeftCorner(q, q) = P.transpose() * P;
  K.block(0, q, q, 1).setOnes();
  K.block(q, 0, 1, q).setOnes();
  VectorXd rhs = VectorXd::Zero(q + 1);
  rhs(q) = 1.0;
  VectorXd sol = K.completeOrthogonalDecomposition().solve(rhs);
  return sol.head(q);
}

}  // namespace

HullProjection project_hull(const std::vector<VectorXd>& points, const VectorXd& x) {
  const int n = static_cast<int>(points.size());
  std::vector<VectorXd> P(n);
  double scale = 0.0;
  int s0 = 0;
  for (int i = 0; i < n; ++i) {
    P[i] = points[i] - x;
    double nn = P[i].squaredNorm();
    scale = std::max(scale, nn);
    if (nn < P[s0].squaredNorm()) s0 = i;
  }
  std::vector<int> S{s0};
  std::vector<double> w{1.0};
  VectorXd xk = P[s0];

  auto corral_matrix = [&]() {
    MatrixXd M(x.size(), static_cast<Eigen::Index>(S.size()));
    for (std::size_t j = 0; j < S.size(); ++j) M.col(static_cast<Eigen::Index>(j)) = P[S[j]];
    return M;
  };

  for (int major = 0; major < 100 * (n + 1); ++major) {
    int j = 0;
    double best = xk.dot(P[0]);
    for (int i = 1; i < n; ++i) {
      double v = xk.dot(P[i]);
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (xk.squaredNorm() - best <= 1e-14 * std::max(scale, 1e-300)) break;
    if (std::find(S.begin(), S.end(), j) != S.end()) break;
    S.push_back(j);
    w.push_back(0.0);

    for (int minor = 0; minor < 10 * (n + 1); ++minor) {
      VectorXd a = affine_minimizer(corral_matrix());
      bool interior = true;
      for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) <= 1e-15) interior = false;
      if (interior) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = a(static_cast<Eigen::Index>(i));
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        double ai = a(static_cast<Eigen::Index>(i));
        if (ai <= 1e-15 && w[i] - ai > 0) theta = std::min(theta, w[i] / (w[i] - ai));
      }
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += theta * (a(static_cast<Eigen::Index>(i)) - w[i]);
      std::vector<int> S2;
      std::vector<double> w2;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] > 1e-15) {
          S2.push_back(S[i]);
          w2.push_back(w[i]);
        }
      }
      if (S2.empty()) {  // numerical corner case: keep the heaviest point
        std::size_t im = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
        S2.push_back(S[im]);
        w2.push_back(1.0);
      }
      S = std::move(S2);
      w = std::move(w2);
    }
    double tot = 0.0;
    for (double v : w) tot += v;
    xk.setZero();
    for (std::size_t i = 0; i < S.size(); ++i) {
      w[i] /= tot;
      xk += w[i] * P[S[i]];
    }
  }

  HullProjection out;
  out.point = x + xk;
  out.weights = VectorXd::Zero(n);
  for (std::size_t i = 0; i < S.size(); ++i) out.weights(S[i]) = w[i];
  out.support = S;
  std::sort(out.support.begin(), out.support.end());
  return out;
}

}  // namespace hrv::qp
