#pragma once

#include <functional>
#include <vector>

namespace hrv::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  long evals = 0;
  bool converged = true;

  Result& operator+=(const Result& o) {
    value += o.value;
    error += o.error;
    evals += o.evals;
    converged = converged && o.converged;
    return *this;
  }
};

using Fn = std::function<double(double)>;

// Globally adaptive 7/15 point Gauss-Kronrod on [a, b]. Stops when the
// summed error estimate is below max(abs_tol, rel_tol |I|) or the evaluation
// budget is exhausted (converged = false).
Result gauss_kronrod(const Fn& f, double a, double b, double rel_tol = 1e-10, double abs_tol = 0.0,
                     long max_evals = 200000);

// Splits [knots.front(), knots.back()] at every knot so kinks of piecewise
// integrands never sit inside a panel. Knots are sorted and deduplicated.
Result integrate_knots(const Fn& f, std::vector<double> knots, double rel_tol = 1e-10, double abs_tol = 0.0,
                       long max_evals = 400000);

// Same on (0, inf) subsets in the variable t = log r: integrates f(r) dr over
// [knots.front(), knots.back()], all knots > 0. Suited to integrands spread
// over many decades.
Result integrate_log(const Fn& f, std::vector<double> knots, double rel_tol = 1e-10, double abs_tol = 0.0,
                     long max_evals = 400000);

struct Rule {
  std::vector<double> x, w;
};

// n-point Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(int n);

}  // namespace hrv::quad
