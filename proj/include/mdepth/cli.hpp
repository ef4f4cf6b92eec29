#pragma once

namespace mdepth {

// Entry point of the command-line tool.  Exit codes: 0 success, 1 data or
// computation errors (JSON report on stderr), 2 usage errors.
int run_cli(int argc, const char* const* argv);

}  // namespace mdepth
