#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bondsim {

/// Exit codes: 0 success, 1 usage or input error, 2 framework check failed,
/// 3 runtime error (the error name is printed on `err`).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bondsim
