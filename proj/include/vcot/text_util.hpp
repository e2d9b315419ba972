// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace vcot {

std::string trim(std::string_view s);
inline bool is_blank(std::string_view s) { return trim(s).empty(); }

}  // namespace vcot
