#pragma once

#include <iosfwd>

namespace dfkg {

// Runs the built-in oracle and property battery, printing one PASS/FAIL
// line per check. Returns the number of failures.
int run_selftest(std::ostream& os, bool verbose = false);

}  // namespace dfkg
