#pragma once

#include <string>
#include <vector>

namespace twc {

/// Command-line front end. Exit codes: 0 success, 2 parse failure,
/// 3 reducible permutation, 4 overflow/timeout, 5 identity failure,
/// 6 not certified, 1 internal error.
int run_cli(const std::vector<std::string>& args);

}  // namespace twc
