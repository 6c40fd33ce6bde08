#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lemniscate {

/// Entry point of the `lemniscate` tool. args excludes the program name.
/// Returns the process exit code: 0 success, 1 usage/IO/numerical problems,
/// 2 a mathematical invariant failed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lemniscate
