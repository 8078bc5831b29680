#pragma once
// Command-line front end. Exit codes: 0 success, 1 validation failure,
// 2 undetermined, 64 usage error, 65 unreadable input, 70 internal error.

#include <iosfwd>

namespace flatlam::cli {

enum Exit { Ok = 0, Invalid = 1, Undetermined = 2, Usage = 64, DataError = 65, Internal = 70 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace flatlam::cli
