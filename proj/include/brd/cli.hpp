#pragma once

#include <iosfwd>

namespace brd {

/// Runs one brd command. Reports go to out, diagnostics to err.
/// Exit codes: 0 success, 1 domain error, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace brd
