// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lbochner {

inline constexpr const char* kToolVersion = "0.1.0";

/// Command-line entry point. `args` excludes the program name.
/// Returns 0 when every check passes, 1 on any FAIL, 2 on usage or parse errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lbochner
