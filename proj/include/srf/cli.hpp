#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace srf {

/// Runs one srfkit command. `args` excludes the program name. Returns 0 when
/// every check passes, 1 when some check fails (the report is still written),
/// 2 on usage or input errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srf
