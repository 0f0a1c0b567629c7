// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgmcts/backends.hpp"
#include "hgmcts/checklist.hpp"
#include "hgmcts/error.hpp"
#include "hgmcts/knowledge_memory.hpp"
#include "hgmcts/search_tree.hpp"
#include "hgmcts/trace.hpp"

namespace hgmcts {

/// How r_q and r_k combine into the backpropagated reward. The product is
/// the default; the sum exists for comparison runs.
enum class RewardMode { kProduct, kAdditive };

struct SearchConfig {
  int max_simulations = 40;
  int max_depth = 6;
  double uct_weight = 0.2;
  int subqueries_per_expansion = 3;  // m_q
  int top_k = 3;
  std::size_t memory_budget = kDefaultMemoryBudget;
  std::uint64_t seed = 0;
  RewardMode reward_mode = RewardMode::kProduct;
  /// false runs the "without checklist" variant: subquery proposal, rewards
  /// and feedback see an empty checklist and feedback is not applied.
  bool checklist_guidance = true;
  /// Ask the policy for a rewritten checklist after each feedback.
  bool policy_checklist_rewrite = false;

  /// Throws kConfiguration naming the first bad field.
  void validate() const;
};

void to_json(nlohmann::json& j, const SearchConfig& c);
std::string_view to_string(RewardMode m);

/// r_q * r_k (or r_q + r_k in additive mode). Throws kInvalidArgument for
/// r_q outside {0,1} or r_k outside {0,1,2}.
double combine_reward(int exploration, int retrieval, RewardMode mode = RewardMode::kProduct);

enum class TerminationReason { kAllGoalsSolved, kBudgetExhausted, kSearchExhausted };
std::string_view to_string(TerminationReason r);

struct SearchOutcome {
  std::string answer;
  KnowledgeMemory memory;
  SearchTree tree;
  Checklist checklist;
  TerminationReason termination_reason = TerminationReason::kBudgetExhausted;
  int simulations_used = 0;
  std::optional<std::filesystem::path> trace_path;
};

/// JSON report of an outcome. `trace_locator` is written verbatim.
nlohmann::json to_report(const SearchOutcome& outcome, const std::string& trace_locator);

/// A search stopped by a backend or trace failure. Carries the trace so far.
class SearchAborted : public Error {
 public:
  SearchAborted(ErrorCode cause, const std::string& message, std::vector<std::string> partial_trace,
                int simulations_used)
      : Error(ErrorCode::kAborted, message),
        cause_(cause),
        partial_trace_(std::move(partial_trace)),
        simulations_used_(simulations_used) {}

  ErrorCode cause() const noexcept { return cause_; }
  const std::vector<std::string>& partial_trace() const noexcept { return partial_trace_; }
  int simulations_used() const noexcept { return simulations_used_; }

 private:
  ErrorCode cause_;
  std::vector<std::string> partial_trace_;
  int simulations_used_;
};

struct Backends {
  const PolicyBackend& policy;
  const RewardBackend& reward;
  const SearchBackend& search;
};

struct ChildResult {
  NodeId child = 0;
  RewardBundle reward;
};

/// One HG-MCTS run. Owns the tree, checklist and memory; borrows the
/// backends and the trace sink. Not shareable between threads while
/// running, but movable to another thread before start.
class Search {
 public:
  Search(std::string query, SearchConfig config, Backends backends, TraceSink& trace);

  /// Header event plus the initial checklist (single-goal fallback when the
  /// policy output has no list items).
  void initialize();

  /// Expands `node` once: proposes subqueries, then for each one while the
  /// budget lasts materializes a child, retrieves, summarizes, scores,
  /// updates memory and checklist, and backpropagates. Stops early when
  /// the checklist completes. Throws kExpansionFailed (after marking the
  /// node expanded) when no usable subquery comes back.
  std::vector<ChildResult> expand_and_evaluate(NodeId node);

  /// Runs select/expand until a stop condition, then generates the answer.
  SearchOutcome run();

  const SearchTree& tree() const noexcept { return tree_; }
  const Checklist& checklist() const noexcept { return checklist_; }
  const KnowledgeMemory& memory() const noexcept { return memory_; }
  int simulations_used() const noexcept { return simulations_used_; }
  const SearchConfig& config() const noexcept { return config_; }

 private:
  bool guided() const noexcept { return config_.checklist_guidance; }
  const Checklist& visible_checklist() const noexcept;
  void warn(std::string_view message);
  std::vector<std::string> usable_subqueries(const std::vector<std::string>& raw) const;
  ChildResult evaluate_child(NodeId node, const std::string& subquery, const HistoryContext& history,
                             CallContext& ctx);

  std::string query_;
  SearchConfig config_;
  Backends backends_;
  TraceSink& trace_;
  SearchTree tree_;
  Checklist checklist_;
  Checklist empty_checklist_;
  KnowledgeMemory memory_;
  std::optional<ProgressFeedback> last_feedback_;
  int simulations_used_ = 0;
  bool initialized_ = false;
};

/// Convenience wrapper: validate, initialize, run. Backend-unavailable,
/// configuration and trace-io failures surface as SearchAborted.
SearchOutcome run_search(std::string_view query, const SearchConfig& config, const Backends& backends,
                         TraceSink& trace);

}  // namespace hgmcts
