// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "pam/pam.hpp"

namespace pam {

// Text format, one map per file:
//   carrier <lo> <hi> [lo_open] [hi_closed]
//   piece <lo> <hi> <a> <b> [lo_open|lo_closed] [hi_open|hi_closed]
// Rationals are "p/q", "p" or finite decimals. Default flags are closed-lo,
// open-hi; the optional tokens override them. Blank lines and '#' comments
// are ignored.
Pam parse_pam(std::istream& in);
Pam parse_pam_text(const std::string& text);
Pam load_pam_file(const std::string& path);

std::string pam_to_text(const Pam& f);

}  // namespace pam
