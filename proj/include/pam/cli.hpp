// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pam {

// Runs one CLI invocation. Exit codes: 0 decided or completed, 1 usage or
// input error, 2 unknown/unsupported.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pam
