#pragma once

#include <iosfwd>

namespace nbtrade {

// Full command-line front end.  Returns the process exit code: 0 success,
// 2 configuration or usage error, 3 numeric or stability error.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

} // namespace nbtrade
