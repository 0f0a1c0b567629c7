// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/types.hpp"

namespace hgmcts {

void to_json(nlohmann::json& j, const Document& d) {
  j = {{"doc_id", d.doc_id}, {"title", d.title}, {"locator", d.locator}, {"content", d.content}};
}

void from_json(const nlohmann::json& j, Document& d) {
  j.at("doc_id").get_to(d.doc_id);
  d.title = j.value("title", "");
  d.locator = j.value("locator", "");
  j.at("content").get_to(d.content);
}

void to_json(nlohmann::json& j, const ProgressFeedback& f) {
  j = {{"text", f.text},
       {"solved_goal_ids", f.solved_goal_ids},
       {"unsolved_goal_ids", f.unsolved_goal_ids},
       {"new_goals", f.new_goals},
       {"terminate", f.terminate}};
}

void from_json(const nlohmann::json& j, ProgressFeedback& f) {
  f.text = j.value("text", "");
  f.solved_goal_ids = j.value("solved_goal_ids", std::set<GoalId>{});
  f.unsolved_goal_ids = j.value("unsolved_goal_ids", std::set<GoalId>{});
  f.new_goals = j.value("new_goals", std::vector<std::string>{});
  f.terminate = j.value("terminate", false);
}

void to_json(nlohmann::json& j, const RewardBundle& r) {
  j = {{"exploration", r.exploration},
       {"retrieval", r.retrieval},
       {"combined", r.combined},
       {"feedback", r.feedback}};
}

}  // namespace hgmcts
