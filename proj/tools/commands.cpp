#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hrv/errors.hpp"
#include "hrv/io.hpp"

namespace hrv::cli {

namespace {

using io::json;

struct Config {
  explicit Config(ProblemSpec s) : spec(std::move(s)) {}
  ProblemSpec spec;
  QuadratureSpec quad;
  std::string inequality = "both";
  std::optional<Family> family;
  std::vector<double> n_list;
  int trials = 20;
  std::uint64_t seed = 0;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Config parse_config(const json& j, const Options& o) {
  const bool bare = j.contains("body");  // a bare ProblemSpec
  if (!bare) {
    io::reject_unknown(j, {"schema_version", "spec", "quadrature", "inequality", "family", "n_list", "trials", "seed"},
                       "config");
    if (j.contains("schema_version") && j["schema_version"] != io::kSchemaVersion)
      throw ConfigError("config: unsupported schema_version");
    if (!j.contains("spec")) throw ConfigError("config: missing field 'spec'");
  }
  Config c(io::spec_from_json(bare ? j : j["spec"]));
  if (!bare) {
    if (j.contains("quadrature")) c.quad = io::quadrature_from_json(j["quadrature"]);
    if (j.contains("inequality")) {
      c.inequality = j["inequality"].get<std::string>();
      if (c.inequality != "hardy" && c.inequality != "rellich" && c.inequality != "both")
        throw ConfigError("config: inequality must be hardy, rellich or both");
    }
    if (j.contains("family")) c.family = parse_family(j["family"].get<std::string>());
    if (j.contains("n_list")) {
      for (const auto& v : j["n_list"]) {
        double n = v.get<double>();
        if (!(n > 1.0)) throw ConfigError("config: n_list entries must be > 1");
        c.n_list.push_back(n);
      }
    }
    if (j.contains("trials")) c.trials = j["trials"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  }
  if (o.seed) c.seed = *o.seed;
  if (o.tol) c.quad.tol = *o.tol;
  if (o.samples) c.trials = static_cast<int>(*o.samples);
  if (c.trials < 0) throw ConfigError("config: trials must be >= 0");
  c.quad.seed = c.seed;
  validate(c.quad);
  return c;
}

Config load(const Options& o) {
  if (o.spec_file.empty()) throw ConfigError("--spec is required");
  return parse_config(read_json_file(o.spec_file), o);
}

std::string format_or(const Options& o, const std::string& dflt) {
  std::string f = o.format.empty() ? dflt : o.format;
  if (f != "json" && f != "csv") throw ConfigError("--format must be json or csv");
  return f;
}

// stdout, plus <out>/<name> when --out is set.
void emit(const Options& o, const std::string& name, const std::string& text, std::ostream& out) {
  out << text;
  if (o.out_dir.empty()) return;
  std::filesystem::create_directories(o.out_dir);
  std::ofstream f(std::filesystem::path(o.out_dir) / name, std::ios::binary);
  if (!f) throw ConfigError("cannot write to '" + o.out_dir + "'");
  f << text;
}

json envelope(const ProblemSpec& spec) {
  return {{"schema_version", io::kSchemaVersion}, {"spec_hash", io::spec_hash(spec)}, {"spec", io::spec_to_json(spec)}};
}

std::string status_cells(const OptimalStatus& s) {
  return to_string(s.kind) + "," + io::fmt(s.lower) + "," + io::fmt(s.upper) + "," + s.tag;
}

std::string constants_csv_header() {
  return "index,spec-hash,d,d_H,p,delta,delta_prime,a_p,a_p_pow,hardy_valid,c_p,C_p,rellich_valid,"
         "mu_kind,mu_lower,mu_upper,mu_tag,nu_kind,nu_lower,nu_upper,nu_tag\n";
}

std::string constants_csv_row(std::size_t i, const ProblemSpec& spec, const ConstantsReport& r) {
  const auto& in = r.inputs;
  std::string row = std::to_string(i) + "," + io::spec_hash(spec) + "," + std::to_string(in.d) + "," +
                    std::to_string(in.d_H) + "," + io::fmt(in.p) + "," + io::fmt(in.delta) + "," +
                    io::fmt(in.delta_prime) + "," + io::fmt(r.hardy.a_p) + "," + io::fmt(r.hardy.a_p_pow) + "," +
                    (r.hardy.valid ? "1" : "0") + ",";
  if (r.rellich_domain_ok)
    row += io::fmt(r.rellich.c_p) + "," + io::fmt(r.rellich.C_p) + "," + (r.rellich.valid ? "1" : "0");
  else
    row += "nan,nan,0";
  return row + "," + status_cells(r.mu_p) + "," + status_cells(r.nu_p) + "\n";
}

Family default_family(const Config& c, bool rellich) {
  if (c.family) {
    if (is_rellich(*c.family) != rellich) throw ConfigError("config: family does not match the inequality");
    return *c.family;
  }
  return rellich ? Family::RellichSigma : Family::HardyRamp;
}

}  // namespace

int cmd_constants(const Options& o, std::ostream& out) {
  if (!o.grid_file.empty()) {
    json g = read_json_file(o.grid_file);
    io::reject_unknown(g, {"schema_version", "specs"}, "grid");
    if (!g.contains("specs") || !g["specs"].is_array()) throw ConfigError("grid: 'specs' must be an array");
    std::string text = constants_csv_header();
    std::size_t i = 0;
    for (const auto& sj : g["specs"]) {
      ProblemSpec s = io::spec_from_json(sj);
      text += constants_csv_row(i++, s, constants_report(s.case_inputs()));
    }
    if (format_or(o, "csv") == "json") throw ConfigError("grid mode emits csv only");
    emit(o, "constants.csv", text, out);
    return kOk;
  }
  Config c = load(o);
  CaseInputs ci = c.spec.case_inputs();
  // An explicit Rellich request surfaces domain errors instead of a flag.
  if (c.inequality == "rellich") rellich_constants(ci.c);
  ConstantsReport r = constants_report(ci);
  if (format_or(o, "json") == "csv") {
    emit(o, "constants.csv", constants_csv_header() + constants_csv_row(0, c.spec, r), out);
    return kOk;
  }
  json j = envelope(c.spec);
  j["geometry"] = io::to_json(c.spec.geom);
  j["constants"] = io::to_json(r);
  emit(o, "constants.json", j.dump(2) + "\n", out);
  return kOk;
}

int cmd_verify(const Options& o, bool rellich, std::ostream& out) {
  Config c = load(o);
  CaseInputs ci = c.spec.case_inputs();
  double lower = 0.0;
  if (rellich) {
    RellichConstants r = rellich_constants(ci.c);  // ConfigError outside the delta domain
    if (!r.valid) throw PreconditionError("condition of Thm 1.2 not satisfied");
    lower = optimal_rellich_case(ci).lower;
  } else {
    HardyConstant h = hardy_constant(ci.c);
    if (!h.valid) throw PreconditionError("condition of Thm 1.1 not satisfied");
    lower = h.a_p_pow;
  }
  if (o.expect_fail) lower = 2.0 * lower + 1.0;  // harness self-test

  std::vector<TrialFunction> trials = random_trials(c.spec.body, c.trials, c.seed, rellich);
  std::vector<double> ns;
  Family fam = default_family(c, rellich);
  {
    std::vector<double> list = c.n_list.empty() ? default_n_list(fam) : c.n_list;
    double n = *std::max_element(list.begin(), list.end());
    try {
      trials.push_back(family_trial(c.spec, fam, n));
      ns.resize(trials.size() - 1, 0.0);
      ns.push_back(n);
    } catch (const ConfigError& e) {
      std::cerr << "note: " << to_string(fam) << " family skipped: " << e.what() << "\n";
    }
  }
  ns.resize(trials.size(), 0.0);

  const std::string hash = io::spec_hash(c.spec);
  const double floor = lower * (1.0 - 10.0 * c.quad.tol);
  std::string text = io::sweep_csv_header();
  int violations = 0, failed = 0;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const TrialFunction& t = trials[i];
    QuotientResult q;
    try {
      q = rellich ? rellich_quotient(c.spec, t, c.quad) : hardy_quotient(c.spec, t, c.quad);
    } catch (const NumericError& e) {
      ++failed;
      std::cerr << "trial " << t.id << ": " << e.what() << "\n";
      text += hash + "," + t.id + "," + io::fmt(ns[i]) + ",nan,nan," + io::fmt(lower) + ",nan\n";
      continue;
    }
    if (q.quotient < floor) ++violations;
    text += hash + "," + t.id + "," + io::fmt(ns[i]) + "," + io::fmt(q.quotient) + "," + io::fmt(q.error) + "," +
            io::fmt(lower) + "," + io::fmt(q.quotient - lower) + "\n";
  }
  const std::string name = rellich ? "verify-rellich" : "verify-hardy";
  if (format_or(o, "csv") == "json") throw ConfigError(name + " emits csv only");
  emit(o, name + ".csv", text, out);
  std::cerr << name << ": " << trials.size() << " trials, " << violations << " violations, " << failed
            << " not evaluated\n";
  return violations > 0 ? kViolation : kOk;
}

int cmd_bracket(const Options& o, std::ostream& out) {
  Config c = load(o);
  if (format_or(o, "json") == "csv") throw ConfigError("bracket emits json only");
  BracketOptions bo;
  bo.quad = c.quad;
  bo.n_list = c.n_list;
  json j = envelope(c.spec);
  if (c.inequality != "rellich") j["mu_p"] = io::to_json(bracket_mu(c.spec, bo));
  if (c.inequality != "hardy") j["nu_p"] = io::to_json(bracket_nu(c.spec, bo));
  emit(o, "bracket.json", j.dump(2) + "\n", out);
  return kOk;
}

int cmd_geometry(const Options& o, std::ostream& out) {
  Config c = load(o);
  if (format_or(o, "json") == "csv") throw ConfigError("geometry emits json only");
  const int samples = o.samples ? static_cast<int>(*o.samples) : 1000;
  if (samples < 1) throw ConfigError("--samples must be >= 1");
  const ConvexBody& K = c.spec.body;
  GeometrySuite s = geometry_suite(K, samples, c.seed);
  KInfEstimate ki = dimension_at_infinity(K, {1e2, 1e3, 1e4}, 4 * samples, c.seed);
  json j = envelope(c.spec);
  j["geometry"] = io::to_json(c.spec.geom);
  j["k_inf"] = io::to_json(ki);
  j["suite"] = {{"samples", s.samples},
                {"max_idempotence", s.max_idempotence},
                {"max_obtuse", s.max_obtuse},
                {"max_grad_defect", s.max_grad_defect},
                {"min_trace_margin", s.min_trace_margin},
                {"max_convexity_violation", s.max_convexity_violation},
                {"segments_checked", s.segments_checked}};
  emit(o, "geometry.json", j.dump(2) + "\n", out);
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  Config c = load(o);
  const bool rellich = c.family ? is_rellich(*c.family) : c.inequality == "rellich";
  Family f = default_family(c, rellich);
  std::vector<double> ns = c.n_list.empty() ? default_n_list(f) : c.n_list;
  SweepResult s = sequence_sweep(c.spec, f, ns, c.quad);
  if (format_or(o, "csv") == "csv") {
    emit(o, "sweep.csv", io::sweep_csv_header() + io::sweep_csv_rows(c.spec, s), out);
  } else {
    json j = envelope(c.spec);
    j["sweep"] = io::to_json(s);
    emit(o, "sweep.json", j.dump(2) + "\n", out);
  }
  return s.violations > 0 ? kViolation : kOk;
}

}  // namespace hrv::cli
