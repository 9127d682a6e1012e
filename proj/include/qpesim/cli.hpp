#pragma once

#include <ostream>

namespace qpesim {

// Full command-line entry point, factored out of main() so tests can drive
// it in process. Writes the report (or circuit dump) to `out` and
// diagnostics to `err`. Returns the process exit code: 0 success, 2 usage
// or parse error, 3 simulation capacity error, 4 rewrite-ineligible,
// 1 anything else.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qpesim
