#pragma once

// Subcommand bodies for the `pantograph` command-line tool. They take parsed
// options and streams so they can be driven in-process by tests.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "pantograph/statics.hpp"

namespace pantograph::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitConfig = 2,
  kExitDomain = 3,
  kExitInvariant = 4,
};

/// Environment variable naming the output directory when neither --out nor
/// the config's output_dir is given.
inline constexpr const char* kOutDirEnv = "PANTOGRAPH_OUT_DIR";
inline constexpr const char* kDefaultOutDir = "pantograph_out";

struct CommonOptions {
  std::optional<std::string> config_path;  // built-in defaults when empty
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
};

struct SweepOptions : CommonOptions {
  bool lossless = false;
  std::optional<Direction> direction;
  bool ascii = false;
};

struct SimulateOptions : CommonOptions {
  bool lossless = false;
  bool compare_spring_probe = false;
};

struct DesignOptions : CommonOptions {
  bool brute_force_check = false;
};

int run_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);
int run_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);
int run_design(const DesignOptions& options, std::ostream& out, std::ostream& err);
int run_verify(std::ostream& out, std::ostream& err);

}  // namespace pantograph::app
