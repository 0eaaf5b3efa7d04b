#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mfkit::cli {

// Runs one invocation. `args` excludes the program name. Data goes to `out`,
// logs to `err`. Returns 0 on success, 1 on domain errors (a structured error
// object is printed) and 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfkit::cli
