#pragma once

// Subcommands of the command line driver.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bergman/config.hpp"

namespace bergman {

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitConfig = 2 };

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<std::string> files;
};

/// One operator file per (symbol, lambda).
CommandResult cmd_build(const RunConfig& cfg, std::ostream& log);
/// Runs the configured checks (default_checks when none) and writes report.json.
CommandResult cmd_verify(const RunConfig& cfg, std::ostream& log);
/// One trace CSV per (symbol, lambda); symbols must be T^m-invariant.
CommandResult cmd_trace_table(const RunConfig& cfg, std::ostream& log);
/// Normalized trace sequences and oscillation diagnostics, m = 1 only.
CommandResult cmd_sequence(const RunConfig& cfg, std::ostream& log);
/// For each configured pair, the block with the largest commutator norm;
/// fails when some pair stays below the witness threshold.
CommandResult cmd_witness(const RunConfig& cfg, std::ostream& log);

struct Overrides {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
};

/// Loads the config, applies overrides and dispatches. Config, input and IO
/// errors are reported on err and mapped to exit code 2.
int run_command(const std::string& name, const std::string& config_path, const Overrides& o, std::ostream& log,
                std::ostream& err);

}  // namespace bergman
