#pragma once

#include <ostream>

namespace ssq {

/// Command-line entry point. Exit codes: 0 success, 1 validation or
/// computation failure, 2 parse or usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ssq
