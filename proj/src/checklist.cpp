// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/checklist.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <unordered_set>

#include "hgmcts/error.hpp"
#include "hgmcts/text.hpp"

namespace hgmcts {
namespace {

struct ListItem {
  std::string_view text;
  bool done = false;
};

// Returns the item when `line` starts with a list marker.
std::optional<ListItem> list_item(std::string_view line) {
  line = text::trim(line);
  if (line.empty()) return std::nullopt;
  std::string_view rest;
  if (line.front() == '-' || line.front() == '*') {
    rest = line.substr(1);
  } else {
    std::size_t i = 0;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
    if (i == 0 || i >= line.size() || (line[i] != '.' && line[i] != ')')) return std::nullopt;
    rest = line.substr(i + 1);
  }
  // "-foo" or "1.5" are not list items.
  if (rest.empty() || !std::isspace(static_cast<unsigned char>(rest.front()))) return std::nullopt;
  rest = text::trim(rest);
  bool done = false;
  for (std::string_view marker : {"[done]", "[todo]", "[x]", "[ ]"}) {
    if (rest.size() >= marker.size() && text::to_lower(rest.substr(0, marker.size())) == marker) {
      done = marker == "[done]" || marker == "[x]";
      rest = text::trim(rest.substr(marker.size()));
      break;
    }
  }
  if (rest.empty()) return std::nullopt;
  return ListItem{rest, done};
}

std::string single_line(std::string_view s) {
  std::string out(text::trim(s));
  std::replace_if(out.begin(), out.end(), [](char c) { return c == '\n' || c == '\r'; }, ' ');
  return out;
}

}  // namespace

Checklist Checklist::from_descriptions(const std::vector<std::string>& descriptions) {
  Checklist c;
  for (const auto& d : descriptions) {
    auto desc = single_line(d);
    if (desc.empty()) continue;
    const auto key = text::normalize_key(desc);
    if (std::any_of(c.goals_.begin(), c.goals_.end(),
                    [&](const SubGoal& g) { return text::normalize_key(g.description) == key; })) {
      continue;
    }
    c.goals_.push_back(SubGoal{c.next_id(), std::move(desc), GoalStatus::kUnsolved,
                               GoalOrigin::kInitial});
  }
  return c;
}

const SubGoal* Checklist::find(GoalId id) const {
  auto it = std::find_if(goals_.begin(), goals_.end(), [&](const SubGoal& g) { return g.id == id; });
  return it == goals_.end() ? nullptr : &*it;
}

std::vector<GoalId> Checklist::solved_ids() const {
  std::vector<GoalId> out;
  for (const auto& g : goals_)
    if (g.solved()) out.push_back(g.id);
  return out;
}

std::vector<GoalId> Checklist::unsolved_ids() const {
  std::vector<GoalId> out;
  for (const auto& g : goals_)
    if (!g.solved()) out.push_back(g.id);
  return out;
}

GoalId Checklist::next_id() const noexcept {
  return goals_.empty() ? 1 : goals_.back().id + 1;
}

FeedbackEffect Checklist::apply_feedback(const ProgressFeedback& feedback) {
  FeedbackEffect effect;
  const bool was_complete = is_complete();
  for (GoalId id : feedback.solved_goal_ids) {
    auto it = std::find_if(goals_.begin(), goals_.end(), [&](const SubGoal& g) { return g.id == id; });
    if (it == goals_.end()) {
      effect.warnings.push_back("feedback names unknown goal " + std::to_string(id));
      continue;
    }
    if (!it->solved()) {
      it->status = GoalStatus::kSolved;
      effect.newly_solved.push_back(id);
    }
  }
  for (GoalId id : feedback.unsolved_goal_ids) {
    const SubGoal* g = find(id);
    if (g == nullptr) {
      effect.warnings.push_back("feedback names unknown goal " + std::to_string(id));
    } else if (g->solved() && !feedback.solved_goal_ids.contains(id)) {
      effect.warnings.push_back("feedback tried to reopen solved goal " + std::to_string(id));
    }
  }

  // A finished checklist stays finished.
  if (was_complete && !feedback.new_goals.empty()) {
    effect.warnings.push_back("checklist already complete; ignoring " + std::to_string(feedback.new_goals.size()) +
                              " new goal(s)");
    ++revision_;
    return effect;
  }
  std::unordered_set<std::string> known;
  for (const auto& g : goals_) known.insert(text::normalize_key(g.description));
  for (const auto& desc : feedback.new_goals) {
    auto key = text::normalize_key(desc);
    if (key.empty() || !known.insert(key).second) continue;
    SubGoal g{next_id(), single_line(desc), GoalStatus::kUnsolved, GoalOrigin::kAppended};
    effect.appended.push_back(g.id);
    goals_.push_back(std::move(g));
  }
  ++revision_;
  return effect;
}

bool Checklist::is_complete() const noexcept {
  return !goals_.empty() &&
         std::all_of(goals_.begin(), goals_.end(), [](const SubGoal& g) { return g.solved(); });
}

Checklist parse_checklist(std::string_view raw) {
  std::vector<std::string> items;
  for (const auto& line : text::split_lines(raw)) {
    if (auto item = list_item(line)) items.emplace_back(item->text);
  }
  if (items.empty()) throw Error(ErrorCode::kEmptyChecklist, "no list items in checklist text");
  return Checklist::from_descriptions(items);
}

ProgressFeedback feedback_from_rewrite(const Checklist& current, std::string_view raw) {
  ProgressFeedback fb;
  fb.text = "checklist rewrite";
  for (const auto& line : text::split_lines(raw)) {
    auto item = list_item(line);
    if (!item) continue;
    const auto key = text::normalize_key(item->text);
    auto it = std::find_if(current.goals().begin(), current.goals().end(), [&](const SubGoal& g) {
      return text::normalize_key(g.description) == key;
    });
    if (it == current.goals().end()) {
      fb.new_goals.emplace_back(item->text);
    } else if (item->done) {
      fb.solved_goal_ids.insert(it->id);
    }
  }
  return fb;
}

std::string render(const Checklist& checklist, std::vector<std::string>* warnings) {
  if (checklist.empty()) {
    if (warnings) warnings->push_back("rendering an empty checklist");
    return {};
  }
  std::string out;
  for (std::size_t i = 0; i < checklist.goals().size(); ++i) {
    const auto& g = checklist.goals()[i];
    if (i) out.push_back('\n');
    out += std::to_string(g.id) + ". " + (g.solved() ? "[done] " : "[todo] ") + g.description;
  }
  return out;
}

std::string_view to_string(GoalStatus s) { return s == GoalStatus::kSolved ? "solved" : "unsolved"; }
std::string_view to_string(GoalOrigin o) { return o == GoalOrigin::kInitial ? "initial" : "appended"; }

void to_json(nlohmann::json& j, const SubGoal& g) {
  j = {{"id", g.id},
       {"description", g.description},
       {"status", to_string(g.status)},
       {"origin", to_string(g.origin)}};
}

void to_json(nlohmann::json& j, const Checklist& c) {
  j = {{"goals", c.goals()}, {"revision", c.revision()}};
}

}  // namespace hgmcts
