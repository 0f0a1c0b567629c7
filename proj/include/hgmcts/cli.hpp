// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hgmcts/error.hpp"

namespace hgmcts::cli {

enum ExitCode : int {
  kOk = 0,
  kReplayDiverged = 1,
  kUsage = 2,
  kBackendAbort = 3,
  kIo = 4,
};

ExitCode exit_code_for(ErrorCode code);

/// The hgmcts tool. `args` excludes the program name. Subcommands: run,
/// bench, sweep, replay, generate.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hgmcts::cli
