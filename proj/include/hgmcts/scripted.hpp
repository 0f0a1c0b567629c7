// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgmcts/backends.hpp"
#include "hgmcts/local_corpus.hpp"

namespace hgmcts {

/// Scripted reward for one normalized subquery.
struct ScriptedReward {
  std::optional<int> exploration;
  /// Normalized snippet text -> r_k; the key "*" matches any snippet.
  std::map<std::string, int> retrieval;
  std::optional<ProgressFeedback> feedback;
};

/// A fully deterministic stand-in for the policy model, the reward model
/// and the search engine.
///
/// subquery_script keys, tried in this order by propose_subqueries:
///   "goal:<id>"  a chain of variants for one sub-goal; while the goal is
///                unsolved the first variant that has not yet put a snippet
///                into memory is proposed (the last one once all have)
///   "depth:<d>"  list proposed at path depth d
///   "*"          list proposed anywhere else
/// Goal keys are only consulted when the checklist is non-empty.
///
/// goal_docs (optional) maps goal ids to the documents that satisfy them;
/// scripted progress feedback then reports a goal solved once memory holds
/// a snippet from one of its documents.
struct ScriptedScenario {
  std::string query;
  std::string checklist_text;
  std::vector<Document> corpus;
  std::map<std::string, std::vector<std::string>> subquery_script;
  std::map<std::string, std::string> summary_script;    // doc_id -> snippet
  std::map<std::string, ScriptedReward> reward_script;  // normalized subquery -> reward
  std::string answer_script;
  std::set<std::string> gold_doc_ids;
  std::map<GoalId, std::set<std::string>> goal_docs;

  /// Locators of the gold documents, for page recall.
  std::set<std::string> gold_locators() const;

  /// Throws kLoad with the offending path on any schema problem.
  static ScriptedScenario load(const std::filesystem::path& file);
  void save(const std::filesystem::path& file) const;
};

void to_json(nlohmann::json& j, const ScriptedScenario& s);
void from_json(const nlohmann::json& j, ScriptedScenario& s);

class ScriptedPolicy final : public PolicyBackend {
 public:
  explicit ScriptedPolicy(std::shared_ptr<const ScriptedScenario> scenario);

  std::string id() const override { return "scripted-policy"; }
  std::string generate_checklist(std::string_view query, CallContext& ctx) const override;
  std::vector<std::string> propose_subqueries(const HistoryContext& history,
                                              const Checklist& checklist,
                                              const KnowledgeMemory& memory, int m_q,
                                              CallContext& ctx) const override;
  /// Picks the best-ranked candidate that has a scripted summary, falling
  /// back to the first candidate and its own content.
  Summary summarize(std::string_view subquery, std::span<const Document> candidates,
                    CallContext& ctx) const override;
  std::string generate_answer(std::string_view query, const KnowledgeMemory& memory,
                              CallContext& ctx) const override;

 private:
  std::shared_ptr<const ScriptedScenario> scenario_;
};

class ScriptedRewardModel final : public RewardBackend {
 public:
  explicit ScriptedRewardModel(std::shared_ptr<const ScriptedScenario> scenario);

  std::string id() const override { return "scripted-reward"; }
  RawScore exploration_reward(std::string_view subquery, const Checklist& checklist,
                              const HistoryContext& history, CallContext& ctx) const override;
  RawScore retrieval_reward(std::string_view subquery, std::string_view snippet,
                            CallContext& ctx) const override;
  std::optional<ProgressFeedback> progress_feedback(std::string_view subquery,
                                                    const Checklist& checklist,
                                                    const HistoryContext& history,
                                                    const KnowledgeMemory& memory,
                                                    std::string_view candidate_snippet,
                                                    CallContext& ctx) const override;

 private:
  std::shared_ptr<const ScriptedScenario> scenario_;
};

/// The three backends for one scenario, sharing the scenario data.
struct ScriptedBackends {
  std::shared_ptr<const ScriptedScenario> scenario;
  std::shared_ptr<const ScriptedPolicy> policy;
  std::shared_ptr<const ScriptedRewardModel> reward;
  std::shared_ptr<const LocalCorpus> search;

  static ScriptedBackends make(ScriptedScenario scenario);
};

}  // namespace hgmcts
