#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace itocx {

/// Exit codes of parse_and_dispatch.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// argv[0] is the program name. Reports go to --out or, by default, to
/// `out`; diagnostics go to `err`.
int parse_and_dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace itocx
