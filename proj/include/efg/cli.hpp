#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace efg {

/// Runs the efgame command line (args exclude the program name). Returns 0
/// on success, 1 on domain errors (a JSON {"error", "message"} object goes
/// to err) and 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace efg
