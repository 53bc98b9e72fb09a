#include "hrv/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "hrv/errors.hpp"

namespace hrv::quad {

namespace {

// Kronrod abscissae (positive half, descending) with weights, and the
// embedded 7 point Gauss weights on the odd positions.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Fn& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    double dx = h * kXgk[j];
    double s = f(c - dx) + f(c + dx);
    resk += kWgk[j] * s;
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  Panel p{a, b, resk * h, std::abs((resk - resg) * h)};
  if (!std::isfinite(p.value)) p.error = std::numeric_limits<double>::infinity();
  return p;
}

}  // namespace

Result gauss_kronrod(const Fn& f, double a, double b, double rel_tol, double abs_tol, long max_evals) {
  Result r;
  if (a == b) return r;
  if (!(std::isfinite(a) && std::isfinite(b))) throw NumericError("gauss_kronrod needs finite limits");
  std::priority_queue<Panel> heap;
  Panel first = gk15(f, a, b);
  r.evals = 15;
  double total = first.value, err = first.error;
  heap.push(first);
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (r.evals + 30 > max_evals) {
      r.converged = false;
      break;
    }
    Panel top = heap.top();
    const double mid = 0.5 * (top.a + top.b);
    if (!(mid > top.a && mid < top.b)) {  // panel below resolution
      r.converged = false;
      break;
    }
    heap.pop();
    Panel l = gk15(f, top.a, mid), rr = gk15(f, mid, top.b);
    r.evals += 30;
    total += l.value + rr.value - top.value;
    err += l.error + rr.error - top.error;
    heap.push(l);
    heap.push(rr);
  }
  // Re-sum from the panels to shed cancellation drift in the running totals.
  double v = 0.0, e = 0.0;
  while (!heap.empty()) {
    v += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  r.value = v;
  r.error = e;
  if (!std::isfinite(v)) r.converged = false;
  return r;
}

Result integrate_knots(const Fn& f, std::vector<double> knots, double rel_tol, double abs_tol, long max_evals) {
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  Result total;
  if (knots.size() < 2) return total;
  const long per = std::max<long>(1000, max_evals / static_cast<long>(knots.size() - 1));
  const double abs_each = abs_tol / static_cast<double>(knots.size() - 1);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    total += gauss_kronrod(f, knots[i], knots[i + 1], rel_tol, abs_each, per);
  return total;
}

Result integrate_log(const Fn& f, std::vector<double> knots, double rel_tol, double abs_tol, long max_evals) {
  for (double k : knots)
    if (!(k > 0.0)) throw NumericError("integrate_log needs positive knots");
  std::vector<double> t(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) t[i] = std::log(knots[i]);
  auto g = [&f](double s) {
    double r = std::exp(s);
    return f(r) * r;
  };
  return integrate_knots(g, t, rel_tol, abs_tol, max_evals);
}

Rule gauss_legendre(int n) {
  if (n < 1) throw ConfigError("Gauss-Legendre rule needs n >= 1");
  // Golub-Welsch: eigen-decomposition of the Jacobi matrix.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    double b = i / std::sqrt(4.0 * i * i - 1.0);
    J(i, i - 1) = J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule r;
  for (int i = 0; i < n; ++i) {
    r.x.push_back(es.eigenvalues()(i));
    double v = es.eigenvectors()(0, i);
    r.w.push_back(2.0 * v * v);
  }
  return r;
}

}  // namespace hrv::quad
