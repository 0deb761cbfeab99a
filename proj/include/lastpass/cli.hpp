// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>

namespace lastpass {

/// Exit codes of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `lastpass` tool, with injectable output streams.
/// Subcommands: enum, verify, transform, simulate, ecdf.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lastpass
