#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bdn {

/// Exit codes shared with SAT-solver convention.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int error = 1;
inline constexpr int yes = 10;
inline constexpr int no = 20;
inline constexpr int unknown = 30;
} // namespace exit_code

/// Runs one `bdnsat` invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bdn
