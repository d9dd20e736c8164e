#pragma once

#include <iosfwd>
#include <string>

#include "hypdisk/core.hpp"

namespace hypdisk::cli {

enum ExitCode : int { ok = 0, input_error = 1, validation_failure = 2, non_convergence = 3 };

/// Complex literal: "re+imi", "re", "imi", or polar "r@THETAdeg".
Complex parse_complex(const std::string& text);

/// Entry point for the hypdisk tool. Reports go to --out (atomically) or to `out` when no path
/// is given; a summary table goes to `out` and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hypdisk::cli
