#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace beamsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

// Entry point behind the beamsim executable. args excludes the program name.
// Result files go to --out (or `out` when absent); diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace beamsim
