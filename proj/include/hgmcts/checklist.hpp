// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgmcts/types.hpp"

namespace hgmcts {

enum class GoalStatus { kUnsolved, kSolved };
enum class GoalOrigin { kInitial, kAppended };

struct SubGoal {
  GoalId id = 0;
  std::string description;
  GoalStatus status = GoalStatus::kUnsolved;
  GoalOrigin origin = GoalOrigin::kInitial;

  bool solved() const noexcept { return status == GoalStatus::kSolved; }
  friend bool operator==(const SubGoal&, const SubGoal&) = default;
};

/// What one apply_feedback call changed, plus the entries it refused.
struct FeedbackEffect {
  std::vector<GoalId> newly_solved;
  std::vector<GoalId> appended;
  std::vector<std::string> warnings;
};

/// The adaptive plan: ordered sub-goals whose solved set only grows.
class Checklist {
 public:
  Checklist() = default;

  /// Builds an initial checklist from descriptions (ids 1..n), skipping
  /// blanks and normalized duplicates.
  static Checklist from_descriptions(const std::vector<std::string>& descriptions);

  const std::vector<SubGoal>& goals() const noexcept { return goals_; }
  int revision() const noexcept { return revision_; }
  bool empty() const noexcept { return goals_.empty(); }
  const SubGoal* find(GoalId id) const;
  std::vector<GoalId> solved_ids() const;
  std::vector<GoalId> unsolved_ids() const;

  /// Marks goals solved, appends new goals (skipping normalized duplicates)
  /// and bumps the revision. Unknown ids and attempts to reopen a solved
  /// goal are ignored and reported in the returned warnings. Once complete,
  /// a checklist refuses new goals.
  FeedbackEffect apply_feedback(const ProgressFeedback& feedback);

  /// True iff there is at least one goal and all goals are solved.
  bool is_complete() const noexcept;

  friend bool operator==(const Checklist&, const Checklist&) = default;

 private:
  GoalId next_id() const noexcept;

  std::vector<SubGoal> goals_;
  int revision_ = 0;
};

/// One goal per list line (`-`, `*` or `N.` markers); other lines are
/// ignored, as are leading `[done]`/`[todo]` status markers. Throws
/// kEmptyChecklist when nothing is extracted.
Checklist parse_checklist(std::string_view raw);

/// Turns a policy-rewritten checklist into feedback against `current`:
/// `[done]` items matching an existing goal mark it solved, unknown items
/// become new goals. Goals missing from the rewrite are left alone.
ProgressFeedback feedback_from_rewrite(const Checklist& current, std::string_view raw);

/// "1. [done] Find A" style, one goal per line. Empty checklist renders as
/// "" and, when `warnings` is given, records why.
std::string render(const Checklist& checklist, std::vector<std::string>* warnings = nullptr);

std::string_view to_string(GoalStatus s);
std::string_view to_string(GoalOrigin o);

void to_json(nlohmann::json& j, const SubGoal& g);
void to_json(nlohmann::json& j, const Checklist& c);

}  // namespace hgmcts
