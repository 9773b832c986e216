#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dofkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAnalysis = 1;
inline constexpr int kExitInput = 2;

/// Command-line front end. `args` excludes the program name. Reports go to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dofkit
