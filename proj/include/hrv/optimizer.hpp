#pragma once

#include <string>
#include <vector>

#include "hrv/functionals.hpp"

namespace hrv {

// Extremal trial families indexed by n > 1. Hardy families carry the
// critical power s^-a, Rellich families s^-alpha, at the boundary (ramp,
// sigma, window) or at infinity (outer).
enum class Family { HardyRamp, HardyWindow, HardyOuter, RellichSigma, RellichWindow, RellichOuter };

std::string to_string(Family f);
Family parse_family(const std::string& s);
bool is_rellich(Family f);

struct FamilyOptions {
  double outer_scale = 1e4;  // inner radius of the outer families
};

// Throws ConfigError when the geometry does not support the family (for
// example outer families on K with unknown dimension at infinity).
TrialFunction family_trial(const ProblemSpec& spec, Family f, double n, const FamilyOptions& opt = {});

struct SweepResult {
  std::string family;
  std::vector<double> n;
  std::vector<double> quotient;
  std::vector<double> error;
  std::vector<std::string> trial_ids;
  double lower_bound = 0.0;
  // q(n) = q_inf + A x + B x^2 with x = (log n)^-(p-1), least squares;
  // B = 0 for three-point sweeps
  double q_inf = 0.0;
  double q_inf_stderr = 0.0;
  double A = 0.0;
  double B = 0.0;
  double fit_rms = 0.0;
  bool heuristic = false;  // fit law carried over to the Rellich families
  int violations = 0;      // quotients below lower_bound beyond their error
};

SweepResult sequence_sweep(const ProblemSpec& spec, Family f, const std::vector<double>& n_list,
                           const QuadratureSpec& quad, const FamilyOptions& opt = {});

// Default n values per family: the log-ramp error decays like 1/log n, so the
// lists run to astronomically large n evaluated in log variables.
std::vector<double> default_n_list(Family f);

struct AlphaMin {
  double alpha = 0.0;
  double q = 0.0;
  std::vector<double> start_alpha, start_q;  // one entry per start
  bool unimodal_ok = true;                   // the starts agree within tolerance
  bool hit_wall = false;                     // divergence met inside the bracket
};

// Golden-section minimisation of the Hardy quotient of s^-alpha P(d) over
// [alpha_lo, alpha_hi], from `starts` random interior points.
AlphaMin minimize_alpha(const ProblemSpec& spec, double alpha_lo, double alpha_hi, const Profile1D& cutoff,
                        const QuadratureSpec& quad, int starts = 3, double x_tol = 1e-4);

// Plateau cutoffs eta_r(y) = zeta(|y - c| - r) on K inside its hull, with c
// the relative interior point: 1 on B_r(c), 0 beyond B_{r+1}(c), so
// |grad eta_r| stays bounded as r grows.
struct PlateauQuotient {
  double r = 0.0;
  double gradient_mass = 0.0;  // int_K |grad eta_r|^p
  double mass = 0.0;           // int_K eta_r^p
  double quotient = 0.0;
};

// Integrals in polar coordinates around c. Planar K uses adaptive angular
// quadrature, k >= 3 averages over n_dirs Gaussian directions.
PlateauQuotient plateau_cutoff_quotient(const ConvexBody& K, double r, double p, int n_dirs = 4096,
                                        std::uint64_t seed = 0);

struct PlateauDecay {
  std::vector<PlateauQuotient> points;
  double slope = 0.0;  // least squares slope of log quotient against log r
};

PlateauDecay plateau_decay(const ConvexBody& K, const std::vector<double>& r_values, double p, int n_dirs = 4096,
                           std::uint64_t seed = 0);

struct Bracket {
  bool valid = false;
  bool exact = false;
  double lower = 0.0;
  double upper = 0.0;
  double upper_theory = 0.0;   // closed form, +inf when none applies
  double upper_numeric = 0.0;  // best trial quotient, +inf when none ran
  double gap = 0.0;
  double tolerance = 0.0;
  std::string best_trial;
  std::vector<std::string> provenance;
  std::string diagnosis;
};

struct BracketOptions {
  std::vector<double> n_list;  // empty: largest entry of the default list
  QuadratureSpec quad{Route::Auto, 1e-6, 4000000, 0};
  bool numeric = true;
  FamilyOptions family;
};

Bracket bracket_mu(const ProblemSpec& spec, const BracketOptions& opt = {});
Bracket bracket_nu(const ProblemSpec& spec, const BracketOptions& opt = {});

}  // namespace hrv
