#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncpmap::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInputError = 2,
    kRejectedByTheory = 3,
    kNumericalFailure = 4,
};

// Runs the command line (args excludes the program name) and returns the exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// Angle literal: decimal numbers, "pi", and + - * / with parentheses, e.g. "pi/4-1e-7".
double parse_angle(const std::string &text);

// Grid specifications:
//   "v1,v2,..."             explicit values (angle literals)
//   "linspace:LO:HI:N"      N evenly spaced values
//   "approach:C:K1:K2"      C - 10^-k for k = K1..K2
std::vector<double> parse_grid(const std::string &spec);

}  // namespace ncpmap::cli
