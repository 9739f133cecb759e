#pragma once

#include <ostream>

namespace gbm::cli {

/// Exit codes.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNegative = 2;  // computed, and the property fails

/// Runs one command line; all output goes to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gbm::cli
