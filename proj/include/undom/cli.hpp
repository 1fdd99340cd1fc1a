#pragma once

#include <iosfwd>

namespace undom {

/// Runs one CLI invocation. Exit codes: 0 success, 1 absent/dominated/failed check,
/// 2 input error (diagnostic and usage on `err`), 3 budget or convergence error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace undom
