// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hgmcts {

using NodeId = std::uint32_t;
using GoalId = std::int32_t;
using SnippetId = std::uint32_t;

/// One retrieved unit: search hit or corpus entry with pre-extracted text.
struct Document {
  std::string doc_id;
  std::string title;
  std::string locator;
  std::string content;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Structured progress report from the reward side. `solved_goal_ids` and
/// `unsolved_goal_ids` refer to checklist goal ids; `new_goals` are
/// descriptions to append when the plan needs refining.
struct ProgressFeedback {
  std::string text;
  std::set<GoalId> solved_goal_ids;
  std::set<GoalId> unsolved_goal_ids;
  std::vector<std::string> new_goals;
  bool terminate = false;

  friend bool operator==(const ProgressFeedback&, const ProgressFeedback&) = default;
};

struct RewardBundle {
  int exploration = 0;  // r_q in {0,1}
  int retrieval = 0;    // r_k in {0,1,2}
  double combined = 0;  // r
  ProgressFeedback feedback;
};

void to_json(nlohmann::json& j, const Document& d);
void from_json(const nlohmann::json& j, Document& d);
void to_json(nlohmann::json& j, const ProgressFeedback& f);
void from_json(const nlohmann::json& j, ProgressFeedback& f);
void to_json(nlohmann::json& j, const RewardBundle& r);

}  // namespace hgmcts
