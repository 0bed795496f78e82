#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dat {

/// Entry point of the command-line front end. Returns the process exit
/// status: 0 on success, 1 on validation/domain failures, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dat
