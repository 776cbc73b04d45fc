#pragma once

#include <chrono>
#include <iosfwd>
#include <string>
#include <vector>

namespace resq::cli {

enum Exit : int { kOk = 0, kNegative = 1, kUnknown = 2, kUsage = 3, kInvalid = 4, kGuard = 5 };

// args excludes the program name. Reports go to `out` (or --out), errors
// and help to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "250ms", "10s", "2m", "1h"; a bare number means seconds.
std::chrono::milliseconds parse_duration(const std::string& text);

const char* version();

}  // namespace resq::cli
