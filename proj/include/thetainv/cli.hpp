#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace thetainv::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kViolations = 1;
inline constexpr int kUsage = 2;
inline constexpr int kShortBitmap = 3;
inline constexpr int kIoError = 4;

// Integer expressions such as "65536", "5*2^10", "2^23+1", "-56".
// Throws std::invalid_argument on malformed input or overflow.
std::int64_t parse_integer_expression(const std::string& text);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thetainv::cli
