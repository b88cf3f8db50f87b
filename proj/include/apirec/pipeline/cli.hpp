// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <exception>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace apirec::pipeline {

enum ExitCode : int {
  kExitOk = 0,
  kExitGeneric = 1,
  kExitParse = 2,
  kExitHole = 3,
  kExitCheckpoint = 4,
};

/// A checkpoint whose header disagrees with explicitly configured model keys.
class CheckpointMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int exit_code_for(const std::exception_ptr& e);

/// Runs the command line `args` (without the program name). Data goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apirec::pipeline
