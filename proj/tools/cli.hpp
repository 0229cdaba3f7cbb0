#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rcts::cli {

// Dispatches one command line (without the program name) against the given
// streams. Returns the process exit status: 0 on success, 1 when a check
// came out negative (blocked run, unequal languages, bad verdict, failed
// witness drive), 2 on input problems, 3 when an exploration cap was hit.
int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace rcts::cli
