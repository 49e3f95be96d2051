#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mweyl {

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Cross-module invariant battery used by the `verify` subcommand; prints
/// one line per check. Returns all results.
std::vector<VerifyCheck> run_verification(std::ostream& log);

}  // namespace mweyl
