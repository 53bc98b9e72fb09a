#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace hrv::cli {

enum Exit : int { kOk = 0, kViolation = 1, kConfig = 2, kPrecondition = 3 };

// Command line overrides; unset values fall back to the config file.
struct Options {
  std::string spec_file;
  std::string grid_file;
  std::string out_dir;
  std::string format;  // json | csv; empty picks the command default
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<long> samples;
  bool expect_fail = false;
};

int cmd_constants(const Options& o, std::ostream& out);
int cmd_verify(const Options& o, bool rellich, std::ostream& out);
int cmd_bracket(const Options& o, std::ostream& out);
int cmd_geometry(const Options& o, std::ostream& out);
int cmd_sweep(const Options& o, std::ostream& out);

}  // namespace hrv::cli
