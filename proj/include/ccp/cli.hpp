#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ccp::cli {

// Exit codes: 0 success / certified CCP, 1 not a CCP, 2 usage, parse or
// construction error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccp::cli
