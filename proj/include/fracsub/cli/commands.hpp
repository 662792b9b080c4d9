#pragma once

#include <exception>
#include <iosfwd>

namespace fracsub::cli {

enum ExitCode : int { ok = 0, failure = 1, invalid = 2, inconsistent = 3 };

/// 2 for configuration and domain errors, 3 for consistency failures, 1 otherwise.
int exit_code_for(const std::exception& e);

/// Entry point: fracsub [--config FILE] [--set key=value]... [--out DIR] [--format csv|jsonl] <subcommand> ...
/// Subcommands: mlf, kernel, subkernel, subordinate, kinetics, cesaro, mc, classify, repro.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracsub::cli
