#pragma once

#include <ostream>

namespace aligneval::cli {

// Runs the align-eval command line. Returns the process exit code:
// 0 success, 1 validation or usage error, 2 I/O error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aligneval::cli
