#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace duhem::cli {

// Runs the command line `args` (without the program name). Returns 0 when
// every requested verification passed, 1 on a verification failure and 2 on
// a usage or configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace duhem::cli
