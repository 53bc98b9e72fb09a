#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hrv/constants.hpp"
#include "hrv/trial.hpp"

namespace hrv {

enum class Route { Auto, Radial1D, TensorGrid, MonteCarlo };

std::string to_string(Route r);
Route parse_route(const std::string& s);

struct QuadratureSpec {
  Route method = Route::Auto;
  double tol = 1e-6;  // relative, in (0, 1e-2]
  long max_evals = 4000000;
  std::uint64_t seed = 0;
};

void validate(const QuadratureSpec& q);

struct QuotientResult {
  double numerator = 0.0;
  double denominator = 0.0;
  double quotient = 0.0;
  double error = 0.0;  // |q| (rel_num + rel_den)
  long evals = 0;
  Route route = Route::Auto;
  bool converged = true;
};

enum class HStrategy { Auto, Analytic, Grushin, FiniteDifference };

std::string to_string(HStrategy h);

// (H phi)(x) with H = -div(c(d) grad). Analytic: radial composition with the
// analytic Laplacian of d^2. Grushin: factorised action on product trials.
// FiniteDifference: 5-point central differences of the analytic flux.
double weighted_operator_apply(const ProblemSpec& spec, const TrialFunction& phi, const Vec& x,
                               HStrategy strategy = HStrategy::Auto);

// Route the Auto method resolves to for this trial.
Route resolve_route(const ProblemSpec& spec, const TrialFunction& phi, Route requested);

QuotientResult hardy_quotient(const ProblemSpec& spec, const TrialFunction& phi, const QuadratureSpec& quad);
QuotientResult hardy_directional_quotient(const ProblemSpec& spec, const TrialFunction& phi,
                                          const QuadratureSpec& quad);
QuotientResult rellich_quotient(const ProblemSpec& spec, const TrialFunction& phi, const QuadratureSpec& quad);

// (1 - l)^-(p-1) s^p + l^-(p-1) t^p, an upper bound for (s + t)^p.
double lambda_split(double s, double t, double lambda, double p);
// Minimiser t / (s + t) of lambda_split over lambda.
double split_equality_point(double s, double t, double p);

struct SplitBound {
  double bound = 0.0;
  double first_term = 0.0;   // (1 - l)^-(p-1) |(beta + delta - p)/p|^p
  double second_term = 0.0;  // l^-(p-1) ratio
  QuotientResult ratio;      // int d^(p-beta) |grad phi|^p / int d^-beta |phi|^p
};

// Upper bound on mu_p for the pure power weight c(s) = s^delta.
SplitBound hardy_split_bound(const ProblemSpec& spec, const TrialFunction& phi, double beta, double lambda,
                             const QuadratureSpec& quad);

struct Lemma31Residual {
  double min_residual = 0.0;
  double min_scaled = 0.0;  // residual / (|H chi| + |b_alpha| d^-2 c chi)
  double b_alpha = 0.0;
  Vec worst_point;
  long points = 0;
};

// min over the points of H chi_Omega - b_alpha d^-2 c chi_Omega with
// chi(s) = s^-alpha (1 + s)^(alpha - alpha').
Lemma31Residual lemma31_residual(const ProblemSpec& spec, double alpha, double alpha_prime,
                                 const std::vector<Vec>& points, HStrategy strategy = HStrategy::Analytic);

// Surface area of the unit sphere in R^m (2 for m = 1).
double sphere_area(int m);

}  // namespace hrv
