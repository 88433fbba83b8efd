#pragma once

#include <cstddef>
#include <ostream>

namespace rcenter {

/// Largest n*m accepted by the solve and decide commands.
inline constexpr std::size_t kCliMaxLocations = 100'000'000;

/// Runs one command line (argv[0] is the program name). Returns the exit
/// code: 0 ok, 1 internal error, 2 invalid input or usage, 3 size guard.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rcenter
