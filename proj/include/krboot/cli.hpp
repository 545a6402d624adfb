#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace krboot::cli {

// Runs one command line (without the program name) against the given
// streams. Returns the process exit code: 0 on success, 1 when a
// computation is refused or a verification fails, 2 on usage or input
// errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace krboot::cli
