// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "chanlab/transforms.hpp"

namespace chanlab::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kUsageError = 2,
  kIoError = 3,
};

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Parses "kind[:p1[:p2[:p3]]]", e.g. "simple:1.3", "log:10", "offset:1.3:0.01",
/// "piecewise:1.3:0.02:0.05". Missing parameters take their defaults.
TransformSpec parse_transform(const std::string &text);

/// Comma-separated list of reals.
std::vector<double> parse_real_list(const std::string &text);

/// Default worker count: $CHANLAB_THREADS when set to a positive integer, else 1.
std::size_t default_threads();

}  // namespace chanlab::cli
