#pragma once
// Command-line front end. Exposed as a library entry point so the CLI binary
// stays a thin shim and tests can drive commands in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace pprlab {

// argv-style arguments without the program name. Exit status: 0 on success,
// 1 on usage/runtime errors, 2 when a validation suite reports a failure.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace pprlab
