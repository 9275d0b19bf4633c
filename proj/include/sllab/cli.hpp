#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sllab::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

/// Runs the command line `args` (without the program name). Results go to
/// `out`, diagnostics to `err`. Flags are validated before any computation.
///
///   verify  --n --k [--p --grid --seed --trials --radius --out]
///   figure  [--grid --out]
///   delta   --theta [--n --tau --caps --resolution]
///   solve   --problem --out [--m --tol --max-iters --log-every]
///   phase   --matrix
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sllab::cli
