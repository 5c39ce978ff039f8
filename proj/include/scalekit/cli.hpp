#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "scalekit/instance.hpp"

namespace scalekit {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitPass = 0, kExitCounterexample = 1, kExitUsage = 2 };

/// Runs one scalekit command. argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// Every applicable verifier over every catalogue entry of the instance.
Json report_all(const Instance& inst, const std::vector<double>& eps);

} // namespace scalekit
