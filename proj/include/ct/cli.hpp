#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ct {

// Runs one subcommand. Exit codes: 0 success, 1 domain error (bad input,
// violated precondition), 2 usage error. `in` serves file arguments given
// as "-".
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err, std::istream& in);

}  // namespace ct
