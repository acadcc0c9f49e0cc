#pragma once

#include <iosfwd>
#include <string>

namespace hetnet::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kPartial = 3 };

/// Entry point of the `hetnet` tool. All output goes to `out` and `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// The preset catalog as printed by `hetnet presets`.
std::string presets_listing();

}  // namespace hetnet::cli
