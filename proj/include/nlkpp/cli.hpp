#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nlkpp {

/// Entry point behind the nlkpp executable. args excludes the program name.
/// Subcommands: critical, coeffs, periodic, stability, eigsplit, front,
/// simulate, report. Outputs go to --out, else $NLKPP_OUT_DIR, else ".".
/// Returns 0 on success, 2 for invalid input, 3 when an operation's
/// precondition fails, 4 on numerical failure; errors are written to err as
/// "error [<code>]: <message>".
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlkpp
