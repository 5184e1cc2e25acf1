// cli.hpp - command-line front end, exposed as a library so tests can drive
// it with captured streams.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace echkit::cli {

// args excludes the program name. Returns the process exit code:
// 0 success, 2 usage error, 3 domain error, 4 internal-consistency error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

} // namespace echkit::cli
