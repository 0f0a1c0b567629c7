// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/knowledge_memory.hpp"

#include "hgmcts/text.hpp"

namespace hgmcts {

std::optional<SnippetId> KnowledgeMemory::admit(KnowledgeSnippet candidate) {
  seen_doc_ids_.insert(candidate.source_doc_id);
  if (candidate.retrieval_reward < kAdmissionThreshold) return std::nullopt;
  if (text::trim(candidate.text).empty()) return std::nullopt;
  auto key = std::make_pair(candidate.source_doc_id, text::normalize_key(candidate.subquery));
  if (!admitted_pairs_.insert(std::move(key)).second) return std::nullopt;

  candidate.id = static_cast<SnippetId>(snippets_.size());
  snippets_.push_back(std::move(candidate));
  return snippets_.back().id;
}

std::set<std::string> KnowledgeMemory::locators() const {
  std::set<std::string> out;
  for (const auto& s : snippets_) out.insert(s.source_locator);
  return out;
}

std::string render_context(const KnowledgeMemory& memory, std::size_t budget) {
  const auto& snippets = memory.snippets();
  std::vector<std::string> lines;
  lines.reserve(snippets.size());
  for (const auto& s : snippets) {
    lines.push_back("[k" + std::to_string(s.id) + "] (via: " + s.subquery + ") " + s.text);
  }

  // Keep the newest suffix that fits; lines are joined by '\n'.
  std::size_t first = lines.size();
  std::size_t used = 0;
  while (first > 0) {
    const std::size_t add = lines[first - 1].size() + (first == lines.size() ? 0 : 1);
    if (used + add > budget) break;
    used += add;
    --first;
  }

  std::string out;
  if (first > 0) {
    out = "…" + std::to_string(first) + " earlier snippets elided";
    if (first < lines.size()) out.push_back('\n');
  }
  for (std::size_t i = first; i < lines.size(); ++i) {
    if (i > first) out.push_back('\n');
    out += lines[i];
  }
  return out;
}

void to_json(nlohmann::json& j, const KnowledgeSnippet& s) {
  j = {{"id", s.id},
       {"text", s.text},
       {"source_doc_id", s.source_doc_id},
       {"source_locator", s.source_locator},
       {"subquery", s.subquery},
       {"node_id", s.node_id},
       {"retrieval_reward", s.retrieval_reward},
       {"step", s.step}};
}

void to_json(nlohmann::json& j, const KnowledgeMemory& m) {
  j = {{"snippets", m.snippets()}, {"seen_doc_ids", m.seen_doc_ids()}};
}

}  // namespace hgmcts
