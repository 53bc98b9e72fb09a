#include "hrv/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hrv/errors.hpp"

namespace hrv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool rellich_domain(const ConstantInputs& in) {
  return in.p > 1.0 && in.delta < 2.0 && in.delta_prime < 2.0 && in.delta >= 0.0 && in.delta_prime >= 0.0;
}

// ((p-1) m (m + p e - 2p) / p^2)^p, the Rellich bound with codimension m and
// exponent e; nullopt when the inner factor is not positive.
std::optional<double> rellich_power_bound(double m, double p, double e) {
  double inner = m + p * e - 2.0 * p;
  if (!(inner > 0.0)) return std::nullopt;
  return std::pow((p - 1.0) * m * inner / (p * p), p);
}
}  // namespace

ConstantInputs ProblemSpec::inputs() const {
  return ConstantInputs{geom.d, geom.d_H, p, weights.delta, weights.delta_prime};
}

CaseInputs ProblemSpec::case_inputs() const {
  CaseInputs c;
  c.c = inputs();
  c.k = geom.k;
  c.k_inf = geom.k_inf;
  if (!c.k_inf && geom.k_inf_confident) c.k_inf = static_cast<int>(std::lround(geom.k_inf_estimate));
  c.single_point = body.kind() == "point";
  return c;
}

ProblemSpec make_spec(ConvexBody body, double p, WeightParams w) {
  require(std::isfinite(p) && p >= 1.0, "p must be >= 1");
  validate(w);
  ProblemSpec s{std::move(body), p, w, {}};
  s.geom = geometry_report(s.body);
  return s;
}

HardyConstant hardy_constant(const ConstantInputs& in) {
  require(in.p >= 1.0, "Hardy constants need p >= 1");
  HardyConstant h;
  double num = in.dd() + in.dmin() - in.p;
  h.a_p = num / in.p;
  h.valid = num > 0.0;
  h.a_p_pow = std::pow(std::abs(h.a_p), in.p);
  return h;
}

HardyConstant hardy_constant_convex(double p, double delta, double delta_prime) {
  require(p >= 1.0, "Hardy constants need p >= 1");
  HardyConstant h;
  double num = p - 1.0 - std::max(delta, delta_prime);
  h.a_p = num / p;
  h.valid = num > 0.0;
  h.a_p_pow = std::pow(std::abs(h.a_p), p);
  return h;
}

RellichExponents rellich_exponents(double p, double delta, double delta_prime) {
  if (!(delta >= 0.0 && delta < 2.0 && delta_prime >= 0.0 && delta_prime < 2.0))
    throw ConfigError("delta out of [0,2)");
  return {(2.0 - delta) * (p - 1.0), (2.0 - delta_prime) * (p - 1.0)};
}

double b_alpha(double dd, double dmin, double alpha, double alpha_prime) {
  require(alpha >= 0.0 && alpha_prime >= 0.0, "b_alpha needs alpha, alpha' >= 0");
  double lo = std::min(alpha, alpha_prime), hi = std::max(alpha, alpha_prime);
  return (dd + dmin) * lo - hi * (hi + 2.0);
}

RellichConstants rellich_constants(const ConstantInputs& in) {
  require(in.p > 1.0, "Rellich constants need p > 1");
  RellichConstants r;
  r.exponents = rellich_exponents(in.p, in.delta, in.delta_prime);
  const double p = in.p, dd = in.dd();
  const double amax = std::max(r.exponents.alpha, r.exponents.alpha_prime);
  r.b_alpha_p = b_alpha(dd, in.dmin(), r.exponents.alpha, r.exponents.alpha_prime);
  r.gamma_p = r.b_alpha_p / (amax * amax);
  r.c_p = (p + r.gamma_p * (p - 1.0)) * r.b_alpha_p / (p * p);
  r.condition_lhs = dd + p * in.dmin() - 2.0 * p;
  r.condition_rhs = 2.0 * p * std::abs(in.delta - in.delta_prime) / (2.0 - in.dmax());
  r.C_p = (p - 1.0) * dd * r.condition_lhs / (p * p);
  r.valid = r.condition_lhs >= r.condition_rhs;
  return r;
}

double rellich_constant_mixed_zero(double dd, double p, double delta) {
  require(p > 1.0, "Rellich constants need p > 1");
  if (!(delta >= 0.0 && delta < 2.0)) throw ConfigError("delta out of [0,2)");
  const double h = 1.0 - delta / 2.0;
  return (p - 1.0) * dd * (dd * h - 2.0 * p) * h / (p * p);
}

RellichL2 rellich_l2_constant(const ConstantInputs& in) {
  RellichL2 r;
  const double dd = in.dd(), m = in.dmin();
  r.a_2 = (dd + m - 2.0) / 2.0;
  r.nu = (1.0 - m / 2.0) * (1.0 - m / 2.0);
  double t = r.a_2 * r.a_2 - r.nu;
  r.via_hardy = t * t;
  double u = dd * (dd + 2.0 * m - 4.0) / 4.0;
  r.via_closed = u * u;
  r.valid = dd + 2.0 * m - 4.0 > 0.0;
  return r;
}

std::string to_string(OptimalKind k) {
  switch (k) {
    case OptimalKind::Exact: return "exact";
    case OptimalKind::Bracket: return "bracket";
    default: return "unknown";
  }
}

OptimalStatus optimal_hardy_case(const CaseInputs& in) {
  const auto& c = in.c;
  OptimalStatus st;
  HardyConstant h = hardy_constant(c);
  if (!h.valid) {
    st.tag = "Thm1.1:condition-fails";
    st.upper = kInf;
    return st;
  }
  st.lower = h.a_p_pow;
  if (in.single_point) {
    st.kind = OptimalKind::Exact;
    st.upper = st.lower;
    st.tag = "Prop4.1";
    return st;
  }
  if (in.k >= 1 && in.k <= c.d - 1) {
    if (c.delta <= c.delta_prime) {
      st.kind = OptimalKind::Exact;
      st.upper = st.lower;
      st.tag = "Thm4.2";
      return st;
    }
    if (in.k_inf && *in.k_inf == in.k) {
      st.kind = OptimalKind::Exact;
      st.upper = st.lower;
      st.tag = "Thm4.5";
      return st;
    }
    st.kind = OptimalKind::Bracket;
    st.upper = std::pow((c.dd() + c.delta - c.p) / c.p, c.p);
    st.tag = "Thm4.2:upper";
    return st;
  }
  // Full-dimensional K: only the lower bound is known in closed form.
  st.kind = OptimalKind::Bracket;
  st.upper = kInf;
  st.tag = "Thm1.1:lower-only";
  return st;
}

OptimalStatus optimal_rellich_case(const CaseInputs& in) {
  const auto& c = in.c;
  OptimalStatus st;
  st.upper = kInf;
  if (!rellich_domain(c)) {
    st.tag = "Thm1.2:domain";
    return st;
  }
  RellichConstants r = rellich_constants(c);
  RellichL2 l2 = rellich_l2_constant(c);
  const bool p2 = c.p == 2.0;
  const bool l2_ok = p2 && l2.valid;
  if (r.valid) {
    st.lower = std::pow(std::max(r.c_p, 0.0), c.p);
    st.tag = "Thm1.2";
  }
  if (l2_ok && l2.via_closed > st.lower) {
    st.lower = l2.via_closed;
    st.tag = "Prop4.6";
  }
  if (!r.valid && !l2_ok) {
    st.tag = "Thm1.2:condition-fails";
    return st;
  }
  const bool same = c.delta == c.delta_prime;
  if (in.single_point) {
    auto ub = rellich_power_bound(c.d, c.p, c.dmin());
    if (ub) {
      st.upper = *ub;
      if (same || l2_ok) {
        st.kind = OptimalKind::Exact;
        st.upper = st.lower;
        st.tag = same ? "Prop4.2" : "Rem4.7";
        return st;
      }
      st.kind = OptimalKind::Bracket;
      st.tag += "+Rem4.3";
      return st;
    }
  } else if (in.k >= 1 && in.k <= c.d - 1) {
    const double m = c.d - in.k;
    auto local = rellich_power_bound(m, c.p, c.delta);
    if (local) st.upper = *local;
    std::string tag = "Thm4.8";
    if (in.k_inf && *in.k_inf == in.k) {
      auto glob = rellich_power_bound(m, c.p, c.dmin());
      if (glob) st.upper = std::min(st.upper, *glob);
      if (same || l2_ok) {
        st.kind = OptimalKind::Exact;
        st.upper = st.lower;
        st.tag = same ? "Thm4.8" : "Thm4.8+Prop4.6";
        return st;
      }
    }
    st.kind = OptimalKind::Bracket;
    if (std::isfinite(st.upper)) st.tag += "+" + tag + ":upper";
    return st;
  }
  st.kind = OptimalKind::Bracket;
  st.tag += ":lower-only";
  return st;
}

ConstantsReport constants_report(const CaseInputs& in) {
  ConstantsReport rep;
  rep.inputs = in.c;
  rep.hardy = hardy_constant(in.c);
  rep.hardy_convex = hardy_constant_convex(in.c.p, in.c.delta, in.c.delta_prime);
  rep.rellich_domain_ok = rellich_domain(in.c);
  if (rep.rellich_domain_ok) {
    rep.rellich = rellich_constants(in.c);
    if (in.c.p == 2.0) rep.l2 = rellich_l2_constant(in.c);
  }
  rep.mu_p = optimal_hardy_case(in);
  rep.nu_p = optimal_rellich_case(in);
  return rep;
}

}  // namespace hrv
