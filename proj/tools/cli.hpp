#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hsvol/exact.hpp"

namespace hsvol::cli {

/// One row of output. float and log10 derive from exact when it is present.
struct OutputRecord {
  std::string quantity;
  int n = 0;
  std::optional<std::string> field;
  std::optional<std::string> convention;
  std::optional<int> rank;
  std::optional<std::string> alpha;
  std::optional<std::string> beta;
  std::optional<ExactValue> exact;
  std::optional<double> value;        // float-only quantities
  std::optional<double> log10_value;  // float-only quantities
};

/// CSV column order.
inline const std::vector<std::string> kColumns{"quantity", "n",     "field", "convention", "rank",
                                               "alpha",    "beta",  "exact", "float",      "log10"};

/// Runs the command line (arguments after the program name).
/// Exit codes: 0 success, 1 failed verification, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hsvol::cli
