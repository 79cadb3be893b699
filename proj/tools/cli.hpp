#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mvml::cli {

enum Exit : int { kHolds = 0, kFails = 1, kInputError = 2, kResourceLimit = 3 };

/// Runs one `mvml` invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mvml::cli
