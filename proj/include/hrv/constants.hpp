#pragma once

#include <optional>
#include <string>

#include "hrv/geometry.hpp"
#include "hrv/weights.hpp"

namespace hrv {

// Everything the closed-form constants depend on. dd = d - d_H.
struct ConstantInputs {
  int d = 3;
  int d_H = 0;
  double p = 2.0;
  double delta = 0.0;
  double delta_prime = 0.0;

  int dd() const { return d - d_H; }
  double dmin() const { return delta < delta_prime ? delta : delta_prime; }
  double dmax() const { return delta < delta_prime ? delta_prime : delta; }
};

// Extra geometric facts used by the optimality case analysis.
struct CaseInputs {
  ConstantInputs c;
  int k = 0;                  // dim K
  std::optional<int> k_inf;   // dimension at infinity when known
  bool single_point = false;  // K = {x0}
};

struct ProblemSpec {
  ConvexBody body;
  double p = 2.0;
  WeightParams weights;
  GeometryReport geom;

  int d() const { return body.ambient_dim(); }
  double q() const { return p / (p - 1.0); }  // infinite for p = 1
  ConstantInputs inputs() const;
  CaseInputs case_inputs() const;
};

// Validates p >= 1 and the weights, caches the geometry report.
ProblemSpec make_spec(ConvexBody body, double p, WeightParams w);

struct HardyConstant {
  double a_p = 0.0;
  double a_p_pow = 0.0;  // a_p^p
  bool valid = false;
};

HardyConstant hardy_constant(const ConstantInputs& in);
// Hardy constant on a convex domain: ((p - 1 - delta v delta')/p)^p.
HardyConstant hardy_constant_convex(double p, double delta, double delta_prime);

struct RellichExponents {
  double alpha = 0.0;
  double alpha_prime = 0.0;
};
RellichExponents rellich_exponents(double p, double delta, double delta_prime);

// b_alpha = (dd + delta^delta')(alpha^alpha') - (alpha v alpha')(alpha v alpha' + 2)
double b_alpha(double dd, double dmin, double alpha, double alpha_prime);

struct RellichConstants {
  RellichExponents exponents;
  double b_alpha_p = 0.0;
  double gamma_p = 0.0;
  double c_p = 0.0;
  double C_p = 0.0;
  double condition_lhs = 0.0;  // dd + p (delta^delta') - 2p
  double condition_rhs = 0.0;  // 2p |delta - delta'| / (2 - delta v delta')
  bool valid = false;
};

RellichConstants rellich_constants(const ConstantInputs& in);
// c_p(delta, 0) = c_p(0, delta) in closed form.
double rellich_constant_mixed_zero(double dd, double p, double delta);

struct RellichL2 {
  double a_2 = 0.0;
  double nu = 0.0;          // (1 - (delta^delta')/2)^2
  double via_hardy = 0.0;   // (a_2^2 - nu)^2
  double via_closed = 0.0;  // (dd (dd + 2 (delta^delta') - 4) / 4)^2
  bool valid = false;       // dd + 2 (delta^delta') - 4 > 0
};
RellichL2 rellich_l2_constant(const ConstantInputs& in);

enum class OptimalKind { Exact, Bracket, Unknown };

struct OptimalStatus {
  OptimalKind kind = OptimalKind::Unknown;
  double lower = 0.0;
  double upper = 0.0;  // +inf when no closed-form upper bound applies
  std::string tag;     // theorem that produced the status
};

std::string to_string(OptimalKind k);

OptimalStatus optimal_hardy_case(const CaseInputs& in);
OptimalStatus optimal_rellich_case(const CaseInputs& in);

struct ConstantsReport {
  ConstantInputs inputs;
  HardyConstant hardy;
  HardyConstant hardy_convex;
  bool rellich_domain_ok = false;  // delta, delta' < 2 and p > 1
  RellichConstants rellich;
  std::optional<RellichL2> l2;
  OptimalStatus mu_p;
  OptimalStatus nu_p;
};

ConstantsReport constants_report(const CaseInputs& in);

}  // namespace hrv
