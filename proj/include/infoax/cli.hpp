#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace infoax::cli {

enum ExitCode : int { kOk = 0, kAxiomFailed = 1, kInputError = 2 };

/// Runs one command line. Output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Formats to 12 significant digits and returns the nearest double.
double round_significant(double v, int digits = 12);

}  // namespace infoax::cli
