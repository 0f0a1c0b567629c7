// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgmcts/types.hpp"

namespace hgmcts {

/// What the evaluation phase attached to a materialized child.
struct EvaluationRecord {
  std::optional<std::string> doc_id;      // document the summary came from
  std::optional<SnippetId> snippet_id;    // set iff the snippet was admitted
  RewardBundle reward;
};

struct TreeNode {
  NodeId id = 0;
  std::optional<NodeId> parent;
  std::vector<NodeId> children;
  std::string subquery;  // empty at the root
  int depth = 0;
  std::int64_t visits = 0;
  double value = 0.0;
  bool expanded = false;  // expansion attempted; never expanded twice
  std::optional<EvaluationRecord> evaluation;
};

/// Returned by uct_score for unvisited nodes.
inline constexpr double kUnvisitedScore = std::numeric_limits<double>::infinity();

/// V + w * sqrt(ln(N_parent) / N). Unvisited nodes score kUnvisitedScore.
double uct_score(double node_value, std::int64_t node_visits, std::int64_t parent_visits,
                 double w);

/// The MCTS tree. Node ids are dense indices in creation order, so a
/// child's id is always greater than its parent's.
///
/// Only the per-node subquery and statistics live here; the checklist and
/// knowledge memory are single objects owned by the search.
class SearchTree {
 public:
  SearchTree(std::string input_query, int max_depth);

  const std::string& input_query() const noexcept { return input_query_; }
  int max_depth() const noexcept { return max_depth_; }
  static constexpr NodeId root() noexcept { return 0; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const TreeNode> nodes() const noexcept { return nodes_; }
  const TreeNode& node(NodeId id) const;

  /// Throws kDepthExceeded at max depth and kDuplicateChild when a sibling
  /// already carries the same normalized subquery.
  NodeId add_child(NodeId parent, std::string subquery);

  /// Incremental mean update on every node from `from` up to the root.
  void backpropagate(NodeId from, double reward);

  void mark_expanded(NodeId id);
  void attach_evaluation(NodeId id, EvaluationRecord record);

  /// Not yet expanded and strictly above the depth limit.
  bool is_expandable(NodeId id) const;

  /// Subqueries on the root-to-node path, root excluded.
  std::vector<std::string> path_subqueries(NodeId id) const;
  /// Node ids from `id` up to and including the root.
  std::vector<NodeId> ancestry(NodeId id) const;

  static SearchTree from_json(const nlohmann::json& j);

 private:
  TreeNode& mutable_node(NodeId id);

  std::string input_query_;
  int max_depth_;
  std::vector<TreeNode> nodes_;
};

/// UCT descent from the root to the first expandable node. Children whose
/// subtree has nothing left to expand are skipped; ties go to the lowest
/// child index. Throws kSearchExhausted when nothing in the tree can be
/// expanded.
NodeId select(const SearchTree& tree, double w);

void to_json(nlohmann::json& j, const SearchTree& tree);
void to_json(nlohmann::json& j, const EvaluationRecord& e);

}  // namespace hgmcts
