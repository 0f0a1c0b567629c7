// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/search_tree.hpp"

#include <cmath>
#include <string>

#include "hgmcts/error.hpp"
#include "hgmcts/text.hpp"

namespace hgmcts {

double uct_score(double node_value, std::int64_t node_visits, std::int64_t parent_visits,
                 double w) {
  if (node_visits < 0 || parent_visits < 0) {
    throw Error(ErrorCode::kInvalidArgument, "uct_score: negative visit count");
  }
  if (parent_visits < node_visits) {
    throw Error(ErrorCode::kInvalidArgument, "uct_score: parent visits below child visits");
  }
  if (w < 0) throw Error(ErrorCode::kInvalidArgument, "uct_score: negative exploration weight");
  if (node_visits == 0) return kUnvisitedScore;
  const double explore = std::log(static_cast<double>(parent_visits)) /
                         static_cast<double>(node_visits);
  return node_value + w * std::sqrt(explore);
}

SearchTree::SearchTree(std::string input_query, int max_depth)
    : input_query_(std::move(input_query)), max_depth_(max_depth) {
  if (text::trim(input_query_).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "search tree needs a non-empty input query");
  }
  if (max_depth_ < 1) throw Error(ErrorCode::kInvalidArgument, "max_depth must be positive");
  nodes_.push_back(TreeNode{});
}

const TreeNode& SearchTree::node(NodeId id) const {
  if (id >= nodes_.size()) {
    throw Error(ErrorCode::kNotFound, "unknown tree node " + std::to_string(id));
  }
  return nodes_[id];
}

TreeNode& SearchTree::mutable_node(NodeId id) {
  if (id >= nodes_.size()) {
    throw Error(ErrorCode::kNotFound, "unknown tree node " + std::to_string(id));
  }
  return nodes_[id];
}

NodeId SearchTree::add_child(NodeId parent, std::string subquery) {
  const TreeNode& p = node(parent);
  if (p.depth >= max_depth_) {
    throw Error(ErrorCode::kDepthExceeded,
                "node " + std::to_string(parent) + " is at max depth " + std::to_string(max_depth_));
  }
  const std::string key = text::normalize_key(subquery);
  if (key.empty()) throw Error(ErrorCode::kInvalidArgument, "child subquery is empty");
  for (NodeId sibling : p.children) {
    if (text::normalize_key(nodes_[sibling].subquery) == key) {
      throw Error(ErrorCode::kDuplicateChild, "duplicate subquery among siblings: " + key);
    }
  }

  TreeNode child;
  child.id = static_cast<NodeId>(nodes_.size());
  child.parent = parent;
  child.subquery = std::move(subquery);
  child.depth = p.depth + 1;
  nodes_.push_back(std::move(child));
  nodes_[parent].children.push_back(nodes_.back().id);
  return nodes_.back().id;
}

void SearchTree::backpropagate(NodeId from, double reward) {
  if (!std::isfinite(reward)) {
    throw Error(ErrorCode::kInvalidArgument, "backpropagate: reward must be finite");
  }
  std::optional<NodeId> cur = mutable_node(from).id;
  while (cur) {
    TreeNode& n = nodes_[*cur];
    const auto old_visits = n.visits;
    n.visits = old_visits + 1;
    n.value = (n.value * static_cast<double>(old_visits) + reward) / static_cast<double>(n.visits);
    cur = n.parent;
  }
}

void SearchTree::mark_expanded(NodeId id) { mutable_node(id).expanded = true; }

void SearchTree::attach_evaluation(NodeId id, EvaluationRecord record) {
  mutable_node(id).evaluation = std::move(record);
}

bool SearchTree::is_expandable(NodeId id) const {
  const TreeNode& n = node(id);
  return !n.expanded && n.depth < max_depth_;
}

std::vector<NodeId> SearchTree::ancestry(NodeId id) const {
  std::vector<NodeId> out;
  std::optional<NodeId> cur = node(id).id;
  while (cur) {
    out.push_back(*cur);
    cur = nodes_[*cur].parent;
  }
  return out;
}

std::vector<std::string> SearchTree::path_subqueries(NodeId id) const {
  auto chain = ancestry(id);
  std::vector<std::string> out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    if (*it != root()) out.push_back(nodes_[*it].subquery);
  }
  return out;
}

NodeId select(const SearchTree& tree, double w) {
  const auto nodes = tree.nodes();
  // live[i]: something in the subtree of i can still be expanded. Children
  // always have larger ids, so one reverse sweep settles every node.
  std::vector<char> live(nodes.size(), 0);
  for (std::size_t i = nodes.size(); i-- > 0;) {
    if (tree.is_expandable(static_cast<NodeId>(i))) {
      live[i] = 1;
      continue;
    }
    for (NodeId c : nodes[i].children) {
      if (live[c]) {
        live[i] = 1;
        break;
      }
    }
  }
  if (!live[SearchTree::root()]) {
    throw Error(ErrorCode::kSearchExhausted, "no expandable node left in the search tree");
  }

  NodeId cur = SearchTree::root();
  while (!tree.is_expandable(cur)) {
    const TreeNode& n = nodes[cur];
    std::optional<NodeId> best;
    double best_score = -std::numeric_limits<double>::infinity();
    for (NodeId c : n.children) {
      if (!live[c]) continue;
      const double s = uct_score(nodes[c].value, nodes[c].visits, n.visits, w);
      if (!best || s > best_score) {
        best = c;
        best_score = s;
      }
    }
    cur = *best;  // live[cur] guarantees a live child exists
  }
  return cur;
}

void to_json(nlohmann::json& j, const EvaluationRecord& e) {
  j = nlohmann::json{{"reward", e.reward}};
  j["doc_id"] = e.doc_id ? nlohmann::json(*e.doc_id) : nlohmann::json(nullptr);
  j["snippet_id"] = e.snippet_id ? nlohmann::json(*e.snippet_id) : nlohmann::json(nullptr);
}

void to_json(nlohmann::json& j, const SearchTree& tree) {
  auto nodes = nlohmann::json::array();
  for (const TreeNode& n : tree.nodes()) {
    nlohmann::json jn{{"id", n.id},
                      {"children", n.children},
                      {"subquery", n.subquery},
                      {"depth", n.depth},
                      {"visits", n.visits},
                      {"value", n.value},
                      {"expanded", n.expanded}};
    jn["parent"] = n.parent ? nlohmann::json(*n.parent) : nlohmann::json(nullptr);
    if (n.evaluation) jn["evaluation"] = *n.evaluation;
    nodes.push_back(std::move(jn));
  }
  j = {{"input_query", tree.input_query()},
       {"max_depth", tree.max_depth()},
       {"root", SearchTree::root()},
       {"nodes", std::move(nodes)}};
}

SearchTree SearchTree::from_json(const nlohmann::json& j) {
  SearchTree tree(j.at("input_query").get<std::string>(), j.at("max_depth").get<int>());
  const auto& nodes = j.at("nodes");
  if (nodes.empty()) throw Error(ErrorCode::kLoad, "tree JSON has no nodes");
  tree.nodes_.clear();
  for (const auto& jn : nodes) {
    TreeNode n;
    jn.at("id").get_to(n.id);
    if (n.id != tree.nodes_.size()) throw Error(ErrorCode::kLoad, "tree node ids must be dense");
    if (!jn.at("parent").is_null()) n.parent = jn.at("parent").get<NodeId>();
    jn.at("children").get_to(n.children);
    jn.at("subquery").get_to(n.subquery);
    jn.at("depth").get_to(n.depth);
    jn.at("visits").get_to(n.visits);
    jn.at("value").get_to(n.value);
    n.expanded = jn.value("expanded", false);
    if (jn.contains("evaluation")) {
      const auto& je = jn["evaluation"];
      EvaluationRecord e;
      if (!je.at("doc_id").is_null()) e.doc_id = je["doc_id"].get<std::string>();
      if (!je.at("snippet_id").is_null()) e.snippet_id = je["snippet_id"].get<SnippetId>();
      const auto& jr = je.at("reward");
      e.reward.exploration = jr.at("exploration").get<int>();
      e.reward.retrieval = jr.at("retrieval").get<int>();
      e.reward.combined = jr.at("combined").get<double>();
      e.reward.feedback = jr.at("feedback").get<ProgressFeedback>();
      n.evaluation = std::move(e);
    }
    tree.nodes_.push_back(std::move(n));
  }
  return tree;
}

}  // namespace hgmcts
