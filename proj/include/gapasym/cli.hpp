#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gapasym::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kSchemaVersion = 1;

/// Runs one command line (args excludes the program name). The report goes to
/// `out` (or the --output file), diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gapasym::cli
