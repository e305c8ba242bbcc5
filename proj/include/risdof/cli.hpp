// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: risdof {rank,rate,sweep,plan,reproduce}.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace risdof {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

/// Default output directory when --out is not given.
inline constexpr const char* kOutputDirEnv = "RISDOF_OUTPUT_DIR";

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace risdof
