#pragma once

namespace klab {

/// Entry point behind the klab binary; exposed for in-process testing.
/// Exit codes: 0 success / all pass, 1 verdict or hypothesis failure at
/// runtime, 2 usage or config errors.
int run_cli(int argc, const char* const* argv);

} // namespace klab
