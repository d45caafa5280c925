#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "flv/cli/config.hpp"

namespace flv::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitUnsupported = 3,
  kExitNumeric = 4,
};

struct Options {
  std::filesystem::path out = ".";
  std::set<std::string> formats{"csv"};  // csv and/or svg; JSON reports are always written
  int workers = 0;
  bool detect_ties = false;
};

/// Each command writes its artifacts under options.out and returns an exit code.
/// Exceptions from the library propagate; run() maps them to exit codes.
int cmd_simulate(const RunConfig& cfg, const Options& options);
int cmd_stability(const RunConfig& cfg, const Options& options);
int cmd_basin(const RunConfig& cfg, const Options& options);
int cmd_separatrix(const RunConfig& cfg, const Options& options);
int cmd_portrait(const RunConfig& cfg, const Options& options);

/// Full command-line entry point.
int run(int argc, char** argv);

}  // namespace flv::cli
