#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace su11::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCompute = 1;
inline constexpr int kExitConfig = 2;

// Full command line including the program name. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a:b" (25 log points), "a:b:n", "a:b:n:log", or a comma list.
std::vector<double> parse_gammas(const std::string& text);

}  // namespace su11::cli
