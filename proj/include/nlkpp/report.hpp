#pragma once

#include <string>
#include <vector>

namespace nlkpp {

/// Files the report looks for, one per subcommand.
const std::vector<std::string>& report_inputs();

/// Summary JSON built from the subcommand outputs found in dir. Sections
/// whose input is missing are marked "absent".
/// Errors: "missing_artifact" (precondition) when no input exists.
std::string build_report(const std::string& dir);

}  // namespace nlkpp
