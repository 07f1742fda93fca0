#pragma once

#include <string>
#include <vector>

namespace refann {

struct ProcessResult {
  int exit_code = -1;
  std::string out;
};

/// Runs `argv[0]` (looked up on PATH) without a shell and captures stdout.
/// stderr is discarded. exit_code is 127 when the program cannot be started.
ProcessResult run_process(const std::vector<std::string>& argv);

}  // namespace refann
