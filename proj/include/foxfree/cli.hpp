#ifndef FOXFREE_CLI_HPP
#define FOXFREE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace foxfree::cli {

// Dispatches one invocation.  Reports are byte-deterministic given identical
// inputs and flags.  Exit codes: 0 success, 2 domain error, 3 bound
// exhaustion, 64 unknown subcommand / usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace foxfree::cli

#endif
