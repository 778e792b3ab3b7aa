#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spineneck::cli {

// Runs one subcommand (reconstruct, phantom, eval, sweep). `args` excludes the
// program name. Returns the process exit status: 0 success, 2 invalid
// input, 3 numerical failure, 4 I/O failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace spineneck::cli
