#pragma once

#include <string>
#include <vector>

namespace mweyl {

/// Exit codes: 0 success, 2 validation/config error, 3 numerical
/// nonconvergence (partial outputs are kept).
int run_cli(const std::vector<std::string>& args);

}  // namespace mweyl
