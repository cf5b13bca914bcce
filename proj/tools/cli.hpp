#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fuchsian::cli {

enum ExitCode : int {
  kOk = 0,
  kIsomorphic = 1,
  kUsage = 2,
  kCapacity = 3,
  kInternal = 4,
};

// args excludes the program name. Results go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuchsian::cli
