#include "hrv/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "hrv/errors.hpp"

namespace hrv::io {

namespace {

json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double read_num(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw ConfigError(what + ": expected a number");
}

Vec read_vec(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ConfigError(what + ": expected a non-empty array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = read_num(j[i], what);
  return v;
}

json write_vec(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
  return j.at(key);
}

json status_json(const OptimalStatus& s) {
  return {{"kind", to_string(s.kind)}, {"lower", num(s.lower)}, {"upper", num(s.upper)}, {"tag", s.tag}};
}

}  // namespace

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError(where + ": unknown field '" + it.key() + "'");
  }
}

json to_json(const ConvexBody& K) {
  json j;
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, SinglePoint>) {
          j = {{"type", "point"}, {"point", write_vec(b.point)}};
        } else if constexpr (std::is_same_v<T, AffineSubspace>) {
          json basis = json::array();
          for (const auto& v : b.basis) basis.push_back(write_vec(v));
          j = {{"type", "affine"}, {"offset", write_vec(b.offset)}, {"basis", basis}};
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          j = {{"type", "halfspace"}, {"normal", write_vec(b.normal)}, {"offset", num(b.offset)}};
        } else if constexpr (std::is_same_v<T, HPolytope>) {
          json f = json::array();
          for (const auto& h : b.facets) f.push_back({{"normal", write_vec(h.normal)}, {"offset", num(h.offset)}});
          j = {{"type", "hpolytope"}, {"facets", f}};
        } else if constexpr (std::is_same_v<T, VPolytope>) {
          json v = json::array();
          for (const auto& x : b.vertices) v.push_back(write_vec(x));
          j = {{"type", "vpolytope"}, {"vertices", v}};
        } else if constexpr (std::is_same_v<T, Ball>) {
          j = {{"type", "ball"}, {"center", write_vec(b.center)}, {"radius", num(b.radius)}};
        } else {
          j = {{"type", "box"}, {"lower", write_vec(b.lower)}, {"upper", write_vec(b.upper)}};
        }
      },
      K.data());
  return j;
}

ConvexBody body_from_json(const json& j) {
  const std::string where = "body";
  if (!j.is_object()) throw ConfigError("body: expected an object");
  const std::string type = field(j, "type", where).get<std::string>();
  if (type == "point") {
    reject_unknown(j, {"type", "point"}, where);
    return ConvexBody::point(read_vec(field(j, "point", where), "body.point"));
  }
  if (type == "affine") {
    reject_unknown(j, {"type", "offset", "basis"}, where);
    std::vector<Vec> basis;
    for (const auto& v : field(j, "basis", where)) basis.push_back(read_vec(v, "body.basis"));
    return ConvexBody::affine(read_vec(field(j, "offset", where), "body.offset"), basis);
  }
  if (type == "line") {
    reject_unknown(j, {"type", "d", "axis"}, where);
    int axis = j.value("axis", 0);
    int d = field(j, "d", where).get<int>();
    require(d >= 1 && axis >= 0 && axis < d, "body: line needs d >= 1 and 0 <= axis < d");
    return ConvexBody::line(d, axis);
  }
  if (type == "halfspace") {
    reject_unknown(j, {"type", "normal", "offset"}, where);
    return ConvexBody::halfspace(read_vec(field(j, "normal", where), "body.normal"),
                                 read_num(field(j, "offset", where), "body.offset"));
  }
  if (type == "hpolytope") {
    reject_unknown(j, {"type", "facets"}, where);
    std::vector<Halfspace> facets;
    for (const auto& f : field(j, "facets", where)) {
      reject_unknown(f, {"normal", "offset"}, "body.facets[]");
      facets.push_back({read_vec(field(f, "normal", where), "body.facets.normal"),
                        read_num(field(f, "offset", where), "body.facets.offset")});
    }
    require(!facets.empty(), "body: hpolytope needs at least one facet");
    return ConvexBody::hpolytope(facets);
  }
  if (type == "vpolytope" || type == "segment") {
    std::vector<Vec> vs;
    if (type == "segment") {
      reject_unknown(j, {"type", "a", "b"}, where);
      vs = {read_vec(field(j, "a", where), "body.a"), read_vec(field(j, "b", where), "body.b")};
    } else {
      reject_unknown(j, {"type", "vertices"}, where);
      for (const auto& v : field(j, "vertices", where)) vs.push_back(read_vec(v, "body.vertices"));
    }
    require(!vs.empty(), "body: vpolytope needs at least one vertex");
    return ConvexBody::vpolytope(vs);
  }
  if (type == "ball") {
    reject_unknown(j, {"type", "center", "radius"}, where);
    return ConvexBody::ball(read_vec(field(j, "center", where), "body.center"),
                            read_num(field(j, "radius", where), "body.radius"));
  }
  if (type == "box") {
    reject_unknown(j, {"type", "lower", "upper"}, where);
    return ConvexBody::box(read_vec(field(j, "lower", where), "body.lower"),
                           read_vec(field(j, "upper", where), "body.upper"));
  }
  throw ConfigError("body: unknown type '" + type + "'");
}

json to_json(const WeightParams& w) {
  return {{"delta", w.delta}, {"delta_prime", w.delta_prime}, {"a", w.a}, {"b", w.b}};
}

WeightParams weights_from_json(const json& j) {
  reject_unknown(j, {"delta", "delta_prime", "a", "b"}, "weights");
  WeightParams w;
  w.delta = read_num(field(j, "delta", "weights"), "weights.delta");
  w.delta_prime = read_num(field(j, "delta_prime", "weights"), "weights.delta_prime");
  if (j.contains("a")) w.a = read_num(j["a"], "weights.a");
  if (j.contains("b")) w.b = read_num(j["b"], "weights.b");
  return w;
}

json spec_to_json(const ProblemSpec& s) {
  return {{"body", to_json(s.body)}, {"p", s.p}, {"weights", to_json(s.weights)}};
}

ProblemSpec spec_from_json(const json& j) {
  reject_unknown(j, {"schema_version", "body", "p", "weights"}, "spec");
  if (j.contains("schema_version") && j["schema_version"] != kSchemaVersion)
    throw ConfigError("spec: unsupported schema_version");
  return make_spec(body_from_json(field(j, "body", "spec")), read_num(field(j, "p", "spec"), "spec.p"),
                   weights_from_json(field(j, "weights", "spec")));
}

json to_json(const QuadratureSpec& q) {
  return {{"method", to_string(q.method)}, {"tol", q.tol}, {"max_evals", q.max_evals}, {"seed", q.seed}};
}

QuadratureSpec quadrature_from_json(const json& j) {
  reject_unknown(j, {"method", "tol", "max_evals", "seed"}, "quadrature");
  QuadratureSpec q;
  if (j.contains("method")) q.method = parse_route(j["method"].get<std::string>());
  if (j.contains("tol")) q.tol = read_num(j["tol"], "quadrature.tol");
  if (j.contains("max_evals")) q.max_evals = j["max_evals"].get<long>();
  if (j.contains("seed")) q.seed = j["seed"].get<std::uint64_t>();
  validate(q);
  return q;
}

json to_json(const ConstantsReport& r) {
  const auto& in = r.inputs;
  json j = {{"inputs",
             {{"d", in.d}, {"d_H", in.d_H}, {"p", in.p}, {"delta", in.delta}, {"delta_prime", in.delta_prime}}},
            {"a_p", num(r.hardy.a_p)},
            {"a_p_pow", num(r.hardy.a_p_pow)},
            {"hardy_valid", r.hardy.valid},
            {"hardy_convex", {{"a_p", num(r.hardy_convex.a_p)}, {"a_p_pow", num(r.hardy_convex.a_p_pow)},
                              {"valid", r.hardy_convex.valid}}},
            {"rellich_domain_ok", r.rellich_domain_ok},
            {"mu_p", status_json(r.mu_p)},
            {"nu_p", status_json(r.nu_p)}};
  if (r.rellich_domain_ok) {
    const auto& R = r.rellich;
    j["rellich"] = {{"alpha_p", num(R.exponents.alpha)},     {"alpha_prime_p", num(R.exponents.alpha_prime)},
                    {"b_alpha_p", num(R.b_alpha_p)},         {"gamma_p", num(R.gamma_p)},
                    {"c_p", num(R.c_p)},                     {"C_p", num(R.C_p)},
                    {"condition_lhs", num(R.condition_lhs)}, {"condition_rhs", num(R.condition_rhs)},
                    {"rellich_valid", R.valid}};
  }
  if (r.l2) {
    j["rellich_l2"] = {{"a_2", num(r.l2->a_2)},
                       {"nu", num(r.l2->nu)},
                       {"via_hardy", num(r.l2->via_hardy)},
                       {"via_closed", num(r.l2->via_closed)},
                       {"valid", r.l2->valid}};
  }
  return j;
}

json to_json(const GeometryReport& g) {
  json j = {{"d", g.d}, {"k", g.k}, {"d_H", g.d_H}, {"k_inf_estimate", num(g.k_inf_estimate)},
            {"k_inf_confident", g.k_inf_confident}};
  j["k_inf"] = g.k_inf ? json(*g.k_inf) : json(nullptr);
  return j;
}

json to_json(const KInfEstimate& k) {
  json j = {{"estimate", num(k.estimate)}, {"rounded", k.rounded},     {"confident", k.confident},
            {"slope_stderr", num(k.slope_stderr)}, {"radii", k.radii}, {"volumes", k.volumes}};
  j["exact"] = k.exact ? json(*k.exact) : json(nullptr);
  return j;
}

json to_json(const QuotientResult& q) {
  return {{"numerator", num(q.numerator)}, {"denominator", num(q.denominator)}, {"quotient", num(q.quotient)},
          {"error", num(q.error)},         {"evals", q.evals},                   {"route", to_string(q.route)},
          {"converged", q.converged}};
}

json to_json(const SweepResult& s) {
  json q = json::array(), e = json::array();
  for (double v : s.quotient) q.push_back(num(v));
  for (double v : s.error) e.push_back(num(v));
  return {{"family", s.family},
          {"n", s.n},
          {"quotient", q},
          {"error", e},
          {"trial_ids", s.trial_ids},
          {"lower_bound", num(s.lower_bound)},
          {"fit", {{"model", "q_inf + A x + B x^2, x = (log n)^-(p-1)"}, {"q_inf", num(s.q_inf)},
                   {"q_inf_stderr", num(s.q_inf_stderr)}, {"A", num(s.A)}, {"B", num(s.B)}, {"rms", num(s.fit_rms)}, {"heuristic", s.heuristic}}},
          {"violations", s.violations}};
}

json to_json(const Bracket& b) {
  return {{"valid", b.valid},
          {"exact", b.exact},
          {"lower", num(b.lower)},
          {"upper", num(b.upper)},
          {"upper_theory", num(b.upper_theory)},
          {"upper_numeric", num(b.upper_numeric)},
          {"gap", num(b.gap)},
          {"tolerance", num(b.tolerance)},
          {"best_trial", b.best_trial},
          {"provenance", b.provenance},
          {"diagnosis", b.diagnosis}};
}

std::string spec_hash(const ProblemSpec& s) {
  const std::string text = spec_to_json(s).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string sweep_csv_header() { return "spec-hash,trial-id,n,quotient,error,lower-bound,margin\n"; }

std::string sweep_csv_rows(const ProblemSpec& spec, const SweepResult& s) {
  const std::string h = spec_hash(spec);
  std::string out;
  for (std::size_t i = 0; i < s.n.size(); ++i) {
    out += h + "," + s.trial_ids[i] + "," + fmt(s.n[i]) + "," + fmt(s.quotient[i]) + "," + fmt(s.error[i]) + "," +
           fmt(s.lower_bound) + "," + fmt(s.quotient[i] - s.lower_bound) + "\n";
  }
  return out;
}

}  // namespace hrv::io
