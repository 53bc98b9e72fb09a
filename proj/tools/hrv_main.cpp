#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "hrv/errors.hpp"

int main(int argc, char** argv) {
  using namespace hrv::cli;
  CLI::App app{"Weighted Hardy and Rellich inequalities on complements of convex sets"};
  app.require_subcommand(1);

  Options o;
  std::uint64_t seed = 0;
  double tol = 0.0;
  long samples = 0;

  auto add_common = [&](CLI::App* sc) {
    sc->add_option("--spec", o.spec_file, "experiment config or bare spec (JSON)");
    sc->add_option("--out", o.out_dir, "also write the report into this directory");
    sc->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sc->add_option("--seed", seed, "override the config seed");
    sc->add_option("--tol", tol, "override the quadrature tolerance");
    sc->add_option("--samples", samples, "random trials (verify) or sample points (geometry)");
  };

  auto* constants = app.add_subcommand("constants", "closed-form constants and optimality status");
  add_common(constants);
  constants->add_option("--grid", o.grid_file, "JSON file {\"specs\": [...]}, emits CSV");
  auto* vh = app.add_subcommand("verify-hardy", "Hardy quotients over random and extremal trials");
  auto* vr = app.add_subcommand("verify-rellich", "Rellich quotients over random and extremal trials");
  for (auto* sc : {vh, vr}) {
    add_common(sc);
    sc->add_flag("--expect-fail", o.expect_fail, "inflate the constant (harness self-test)");
  }
  auto* bracket = app.add_subcommand("bracket", "two-sided bracket of the optimal constants");
  auto* geometry = app.add_subcommand("geometry", "projection, curvature, convexity and k_inf checks");
  auto* sweep = app.add_subcommand("sweep", "extremal sequence sweep, CSV");
  for (auto* sc : {bracket, geometry, sweep}) add_common(sc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kConfig;
  }

  for (auto* sc : app.get_subcommands()) {
    if (sc->count("--seed")) o.seed = seed;
    if (sc->count("--tol")) o.tol = tol;
    if (sc->count("--samples")) o.samples = samples;
  }

  try {
    if (*constants) return cmd_constants(o, std::cout);
    if (*vh) return cmd_verify(o, false, std::cout);
    if (*vr) return cmd_verify(o, true, std::cout);
    if (*bracket) return cmd_bracket(o, std::cout);
    if (*geometry) return cmd_geometry(o, std::cout);
    return cmd_sweep(o, std::cout);
  } catch (const hrv::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const hrv::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const hrv::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    // nlohmann type errors and the like are malformed configs
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
}
