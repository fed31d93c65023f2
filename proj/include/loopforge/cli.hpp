#pragma once

#include <iosfwd>

namespace loopforge {

// Exit codes: 0 success, 1 verification mismatch, 2 usage error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace loopforge
