#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "holo/error.hpp"

namespace holo::cli {

/// 0 success, 1 property check failed, 2 configuration error,
/// 3 numeric or construction failure.
enum Exit : int { ok = 0, check_failed = 1, bad_config = 2, numeric_failure = 3 };

int exit_code_for(ErrorCode code);

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace holo::cli
