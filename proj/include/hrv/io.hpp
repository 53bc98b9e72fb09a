#pragma once

#include <cstdint>
#include <string>

#include "hrv/optimizer.hpp"
#include "json.hpp"

namespace hrv::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Throws ConfigError naming the first key of `j` outside `allowed`.
void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where);

json to_json(const ConvexBody& K);
ConvexBody body_from_json(const json& j);

json to_json(const WeightParams& w);
WeightParams weights_from_json(const json& j);

json spec_to_json(const ProblemSpec& s);
ProblemSpec spec_from_json(const json& j);

json to_json(const QuadratureSpec& q);
QuadratureSpec quadrature_from_json(const json& j);

json to_json(const ConstantsReport& r);
json to_json(const GeometryReport& g);
json to_json(const KInfEstimate& k);
json to_json(const QuotientResult& q);
json to_json(const SweepResult& s);
json to_json(const Bracket& b);

// FNV-1a 64 of the canonical (sorted-key) dump, as 16 hex digits.
std::string spec_hash(const ProblemSpec& s);

// Shortest round-trip formatting, so CSV output is byte-stable.
std::string fmt(double x);

// CSV rows: spec-hash,trial-id,n,quotient,error,lower-bound,margin
std::string sweep_csv_header();
std::string sweep_csv_rows(const ProblemSpec& spec, const SweepResult& s);

}  // namespace hrv::io
