#pragma once

#include <string>
#include <vector>

namespace biinterp {

/// Command-line front end. Exit codes: 0 success, 1 verification failure,
/// 2 input error. Malformed input never escapes as an exception.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace biinterp
