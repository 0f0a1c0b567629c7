// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/scripted.hpp"

#include <algorithm>
#include <fstream>

#include "hgmcts/error.hpp"
#include "hgmcts/text.hpp"

namespace hgmcts {
namespace {

constexpr std::size_t kFallbackSnippetChars = 400;

const ScriptedReward* find_reward(const ScriptedScenario& s, std::string_view subquery) {
  auto it = s.reward_script.find(text::normalize_key(subquery));
  return it == s.reward_script.end() ? nullptr : &it->second;
}

}  // namespace

std::set<std::string> ScriptedScenario::gold_locators() const {
  std::set<std::string> out;
  for (const auto& d : corpus)
    if (gold_doc_ids.contains(d.doc_id)) out.insert(d.locator);
  return out;
}

void to_json(nlohmann::json& j, const ScriptedScenario& s) {
  auto rewards = nlohmann::json::object();
  for (const auto& [key, r] : s.reward_script) {
    nlohmann::json jr{{"retrieval", r.retrieval}};
    if (r.exploration) jr["exploration"] = *r.exploration;
    if (r.feedback) jr["feedback"] = *r.feedback;
    rewards[key] = std::move(jr);
  }
  auto goal_docs = nlohmann::json::object();
  for (const auto& [goal, docs] : s.goal_docs) goal_docs[std::to_string(goal)] = docs;
  j = {{"query", s.query},
       {"checklist_text", s.checklist_text},
       {"corpus", s.corpus},
       {"subquery_script", s.subquery_script},
       {"summary_script", s.summary_script},
       {"reward_script", std::move(rewards)},
       {"answer_script", s.answer_script},
       {"gold_doc_ids", s.gold_doc_ids},
       {"goal_docs", std::move(goal_docs)}};
}

void from_json(const nlohmann::json& j, ScriptedScenario& s) {
  j.at("query").get_to(s.query);
  j.at("checklist_text").get_to(s.checklist_text);
  j.at("corpus").get_to(s.corpus);
  s.subquery_script = j.value("subquery_script", std::map<std::string, std::vector<std::string>>{});
  s.summary_script = j.value("summary_script", std::map<std::string, std::string>{});
  s.reward_script.clear();
  const auto reward_json = j.value("reward_script", nlohmann::json::object());
  for (const auto& [key, jr] : reward_json.items()) {
    ScriptedReward r;
    if (jr.contains("exploration")) r.exploration = jr.at("exploration").get<int>();
    const auto retrieval = jr.value("retrieval", nlohmann::json::object());
    for (const auto& [snippet, score] : retrieval.items()) {
      r.retrieval[snippet == "*" ? snippet : text::normalize_key(snippet)] = score.get<int>();
    }
    if (jr.contains("feedback")) r.feedback = jr.at("feedback").get<ProgressFeedback>();
    s.reward_script[text::normalize_key(key)] = std::move(r);
  }
  s.answer_script = j.value("answer_script", "");
  s.gold_doc_ids = j.value("gold_doc_ids", std::set<std::string>{});
  s.goal_docs.clear();
  const auto goal_json = j.value("goal_docs", nlohmann::json::object());
  for (const auto& [goal, docs] : goal_json.items()) {
    s.goal_docs[std::stoi(goal)] = docs.get<std::set<std::string>>();
  }
}

ScriptedScenario ScriptedScenario::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::kLoad, "cannot open scenario " + file.string());
  try {
    return nlohmann::json::parse(in).get<ScriptedScenario>();
  } catch (const std::exception& ex) {
    throw Error(ErrorCode::kLoad, "scenario " + file.string() + ": " + ex.what());
  }
}

void ScriptedScenario::save(const std::filesystem::path& file) const {
  std::ofstream out(file);
  out << nlohmann::json(*this).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kLoad, "cannot write scenario " + file.string());
}

ScriptedPolicy::ScriptedPolicy(std::shared_ptr<const ScriptedScenario> scenario)
    : scenario_(std::move(scenario)) {}

std::string ScriptedPolicy::generate_checklist(std::string_view /*query*/, CallContext& /*ctx*/) const {
  return scenario_->checklist_text;
}

std::vector<std::string> ScriptedPolicy::propose_subqueries(const HistoryContext& history,
                                                            const Checklist& checklist,
                                                            const KnowledgeMemory& memory,
                                                            int m_q, CallContext& /*ctx*/) const {
  const auto& script = scenario_->subquery_script;
  const std::size_t limit = static_cast<std::size_t>(std::max(m_q, 0));

  std::set<std::string> answered;
  for (const auto& snip : memory.snippets()) answered.insert(text::normalize_key(snip.subquery));

  std::vector<std::string> out;
  for (const auto& goal : checklist.goals()) {
    if (goal.solved() || out.size() >= limit) continue;
    auto it = script.find("goal:" + std::to_string(goal.id));
    if (it == script.end() || it->second.empty()) continue;
    const auto& variants = it->second;
    std::size_t next = 0;
    while (next + 1 < variants.size() && answered.contains(text::normalize_key(variants[next]))) ++next;
    out.push_back(variants[next]);
  }
  if (!out.empty()) return out;

  const std::size_t depth = history.path_subqueries.size();
  auto it = script.find("depth:" + std::to_string(depth));
  if (it == script.end()) it = script.find("*");
  if (it == script.end()) return {};
  const auto& list = it->second;
  out.assign(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(std::min(limit, list.size())));
  return out;
}

Summary ScriptedPolicy::summarize(std::string_view /*subquery*/, std::span<const Document> candidates,
                                  CallContext& /*ctx*/) const {
  if (candidates.empty()) throw Error(ErrorCode::kNoDocuments, "summarize called without candidates");
  for (const auto& d : candidates) {
    if (auto it = scenario_->summary_script.find(d.doc_id); it != scenario_->summary_script.end()) {
      return {d.doc_id, it->second};
    }
  }
  const auto& first = candidates.front();
  return {first.doc_id, first.content.substr(0, kFallbackSnippetChars)};
}

std::string ScriptedPolicy::generate_answer(std::string_view /*query*/, const KnowledgeMemory& /*memory*/,
                                            CallContext& /*ctx*/) const {
  return scenario_->answer_script;
}

ScriptedRewardModel::ScriptedRewardModel(std::shared_ptr<const ScriptedScenario> scenario)
    : scenario_(std::move(scenario)) {}

RawScore ScriptedRewardModel::exploration_reward(std::string_view subquery, const Checklist& /*checklist*/,
                                                 const HistoryContext& /*history*/,
                                                 CallContext& /*ctx*/) const {
  const auto* r = find_reward(*scenario_, subquery);
  if (r == nullptr || !r->exploration) return {std::nullopt, "no scripted exploration reward"};
  return {r->exploration, std::to_string(*r->exploration)};
}

RawScore ScriptedRewardModel::retrieval_reward(std::string_view subquery, std::string_view snippet,
                                               CallContext& /*ctx*/) const {
  const auto* r = find_reward(*scenario_, subquery);
  if (r == nullptr) return {std::nullopt, "no scripted retrieval reward"};
  auto it = r->retrieval.find(text::normalize_key(snippet));
  if (it == r->retrieval.end()) it = r->retrieval.find("*");
  if (it == r->retrieval.end()) return {std::nullopt, "no scripted retrieval reward"};
  return {it->second, std::to_string(it->second)};
}

std::optional<ProgressFeedback> ScriptedRewardModel::progress_feedback(
    std::string_view subquery, const Checklist& checklist, const HistoryContext& /*history*/,
    const KnowledgeMemory& memory, std::string_view /*candidate_snippet*/, CallContext& /*ctx*/) const {
  ProgressFeedback fb;
  if (const auto* r = find_reward(*scenario_, subquery); r && r->feedback) fb = *r->feedback;

  if (!scenario_->goal_docs.empty()) {
    for (const auto& goal : checklist.goals()) {
      auto it = scenario_->goal_docs.find(goal.id);
      if (it == scenario_->goal_docs.end()) continue;
      const bool found = std::any_of(memory.snippets().begin(), memory.snippets().end(),
                                     [&](const KnowledgeSnippet& s) { return it->second.contains(s.source_doc_id); });
      if (found) fb.solved_goal_ids.insert(goal.id);
    }
  }

  std::vector<std::string> done, todo;
  for (const auto& goal : checklist.goals()) {
    const bool solved = goal.solved() || fb.solved_goal_ids.contains(goal.id);
    (solved ? done : todo).push_back(std::to_string(goal.id));
  }
  if (!checklist.empty() && todo.empty()) fb.terminate = true;
  if (fb.text.empty()) {
    fb.text = "solved: [" + text::join(done, ",") + "] remaining: [" + text::join(todo, ",") + "]";
  }
  return fb;
}

ScriptedBackends ScriptedBackends::make(ScriptedScenario scenario) {
  ScriptedBackends b;
  auto shared = std::make_shared<const ScriptedScenario>(std::move(scenario));
  b.scenario = shared;
  b.policy = std::make_shared<const ScriptedPolicy>(shared);
  b.reward = std::make_shared<const ScriptedRewardModel>(shared);
  b.search = std::make_shared<const LocalCorpus>(shared->corpus);
  return b;
}

}  // namespace hgmcts
