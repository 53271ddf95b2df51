#pragma once

#include <iosfwd>

namespace ectff::cli {

// Exit codes: 0 success, 1 domain error, 2 usage error, 3 internal error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace ectff::cli
