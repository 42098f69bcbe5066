#pragma once

#include "config.hpp"

#include <ostream>

namespace hwzak::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kConfigError = 1, kVerificationFailed = 2 };

int cmd_zak(const RunConfig& cfg, std::ostream& log);
int cmd_sample(const RunConfig& cfg, std::ostream& log);
int cmd_lattice(const RunConfig& cfg, std::ostream& log);
int cmd_wigner(const RunConfig& cfg, std::ostream& log);
int cmd_poisson(const RunConfig& cfg, std::ostream& log);

/// Dispatch on cfg.command.
int run_command(const RunConfig& cfg, std::ostream& log);

} // namespace hwzak::cli
