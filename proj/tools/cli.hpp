#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace s2f::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kFormat = 3,
  kCapacity = 4,  // capacity and dimension failures
};

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace s2f::cli
