// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hgmcts::text {

/// ASCII casefold + trim + collapse internal whitespace runs to one space.
/// This is the dedup key for goals, subqueries and memory entries.
std::string normalize_key(std::string_view s);

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);

/// Lowercased alphanumeric runs. Everything else separates tokens.
std::vector<std::string> word_tokens(std::string_view s);

std::vector<std::string> split_lines(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace hgmcts::text
