#pragma once

// The `absence` command line. Exit codes: 0 success, 1 error, 2 a negative
// answer (infeasible, losing, violations found), 3 search budget exhausted.

#include <ostream>
#include <string>
#include <vector>

namespace absence {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace absence
