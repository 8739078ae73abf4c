#pragma once

// The `semiq` command-line front end, callable in-process for tests.

#include <ostream>
#include <string>
#include <vector>

namespace semiq::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,  // a bug: an internal bound was hit or an unexpected exception escaped
  kInputError = 2,
  kMismatch = 3,
};

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semiq::cli
