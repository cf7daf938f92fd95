// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. `run_cli` is the whole program minus process
// setup, so tests can drive it in-process.

#ifndef DAMFORGE_CLI_HPP_
#define DAMFORGE_CLI_HPP_

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace damforge {

// Exit statuses. Errors also print one line "error: <kind>: <message>".
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // unclassified
  kExitUsage = 2,
  kExitParse = 3,
  kExitConfig = 4,
  kExitInput = 5,
  kExitOutput = 6,
  kExitGeneration = 7,
  kExitContract = 8,
  kExitStatistic = 9,
  kExitTraining = 10,
  kExitScorer = 11,
};

int exit_code_for(const std::string& error_kind);

// `args` excludes the program name. `environment` supplies DAMFORGE_*
// overrides.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err,
            const std::map<std::string, std::string>& environment);

}  // namespace damforge

#endif  // DAMFORGE_CLI_HPP_
