#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace parley::cli {

// Runs one command-line invocation. args excludes the program name.
// Returns the process exit code: 0 on success, 1 on runtime or domain
// errors (bad files, failed parses, simulation faults), 2 on usage errors.
// All console traffic goes through the supplied streams; standard input is
// consulted only by the interactive command.
int dispatch(std::vector<std::string> args, std::istream& in,
             std::ostream& out, std::ostream& err);

}  // namespace parley::cli
