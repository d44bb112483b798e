#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sflow::cli {

/// Exit codes: 0 success, 1 a verification check failed, 2 invalid input or unwritable output.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalid = 2;

/// Runs the command line (without the program name), writing results to out and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1e-3..1e-12" (decades between two powers of ten) or a comma-separated list.
std::vector<double> parse_grid(std::string_view text);

/// "11", "1..100", or a comma-separated mix of both.
std::vector<std::int64_t> parse_gap_list(std::string_view text);

}  // namespace sflow::cli
