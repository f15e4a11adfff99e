#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualitykit {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInput = 2, kExitCap = 3 };

/// Entry point of the `dualitykit` binary. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualitykit
