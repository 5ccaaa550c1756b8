#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cuspcobord::cli {

/// Exit codes: 0 success or affirmative, 1 negative answer or obstruction,
/// 2 input or precondition error.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInputError = 2;

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cuspcobord::cli
