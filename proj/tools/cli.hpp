#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace divest::cli {

inline constexpr int kSchemaVersion = 1;

/// Runs one command. `args` excludes the program name. Documents go to
/// `out`, warnings and help text to `err`. Returns the process exit status:
/// 0 on success, 1 for a failed computation or bad input, 2 for bad usage.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace divest::cli
