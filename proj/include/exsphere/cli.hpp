// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace exsphere {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Command-line front end: `exsphere <check|cover|sconvex|harness|report>
/// SCENE [flags]`. Returns the process exit status.
int run_cli(std::vector<std::string> const& args, std::ostream& out,
            std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace exsphere
