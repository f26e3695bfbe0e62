#pragma once

#include <iosfwd>

namespace fisnose::cli {

/// Runs the `fisnose` command line. argv[0] is the program name. Returns the
/// process exit code; diagnostics go to `err`, results to `out`, and the
/// classify command reads `in` when no input file is given.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace fisnose::cli
