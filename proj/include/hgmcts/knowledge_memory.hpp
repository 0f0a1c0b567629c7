// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgmcts/types.hpp"

namespace hgmcts {

/// Minimum retrieval reward for a snippet to enter memory.
inline constexpr int kAdmissionThreshold = 1;

/// Default character budget for render_context.
inline constexpr std::size_t kDefaultMemoryBudget = 24000;

struct KnowledgeSnippet {
  SnippetId id = 0;  // assigned on admission
  std::string text;
  std::string source_doc_id;
  std::string source_locator;
  std::string subquery;
  NodeId node_id = 0;
  int retrieval_reward = 0;
  int step = 0;
};

/// Append-only store of extracted knowledge with provenance.
class KnowledgeMemory {
 public:
  /// Appends the candidate iff its retrieval reward reaches the threshold
  /// and its document has not already contributed a snippet for the same
  /// normalized subquery. The candidate's id is ignored; the memory
  /// assigns the next dense id and returns it. The document is recorded as
  /// seen either way.
  std::optional<SnippetId> admit(KnowledgeSnippet candidate);

  const std::vector<KnowledgeSnippet>& snippets() const noexcept { return snippets_; }
  const std::set<std::string>& seen_doc_ids() const noexcept { return seen_doc_ids_; }
  std::size_t size() const noexcept { return snippets_.size(); }
  bool empty() const noexcept { return snippets_.empty(); }

  /// Source locators of admitted snippets, deduplicated.
  std::set<std::string> locators() const;

 private:
  std::vector<KnowledgeSnippet> snippets_;
  std::set<std::string> seen_doc_ids_;
  std::set<std::pair<std::string, std::string>> admitted_pairs_;  // (doc, normalized subquery)
};

/// "[k{id}] (via: {subquery}) {text}" lines in admission order. When the
/// lines do not fit `budget` characters the oldest are dropped and a line
/// "…N earlier snippets elided" is prepended. The marker line is not
/// counted against the budget.
std::string render_context(const KnowledgeMemory& memory, std::size_t budget = kDefaultMemoryBudget);

void to_json(nlohmann::json& j, const KnowledgeSnippet& s);
void to_json(nlohmann::json& j, const KnowledgeMemory& m);

}  // namespace hgmcts
