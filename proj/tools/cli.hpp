#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pleat {

// Exit codes: 0 success, 1 a reported check failed, 2 precondition failure, 3 parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pleat
