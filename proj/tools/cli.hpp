// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <ostream>

namespace gas::cli {

enum ExitCode { kSuccess = 0, kUsage = 1, kFailure = 2 };

// Parses argv and runs one subcommand: estimate, forecast, simulate,
// bootstrap, filter or distr.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gas::cli
