#pragma once

#include <ostream>

namespace dcurve::cli {

enum ExitCode : int { ok = 0, usage = 1, data = 2, internal = 3 };

// Entry point of the dcurve tool, with injectable streams for tests.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace dcurve::cli
