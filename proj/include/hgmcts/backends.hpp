// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgmcts/checklist.hpp"
#include "hgmcts/knowledge_memory.hpp"
#include "hgmcts/trace.hpp"
#include "hgmcts/types.hpp"

namespace hgmcts {

/// H: the input query, the last progress feedback and the subqueries on
/// the root-to-node path of the node being expanded.
struct HistoryContext {
  std::string input_query;
  std::optional<ProgressFeedback> last_feedback;
  std::vector<std::string> path_subqueries;
};

/// Per-call side channel from a backend back to the running search. A
/// backend object is shared between searches; this is not.
class CallContext {
 public:
  explicit CallContext(TraceSink* sink = nullptr) : sink_(sink) {}

  void warn(std::string_view message);
  void transport(nlohmann::json payload);

 private:
  TraceSink* sink_;
};

/// A score as the backend reported it. `value` is empty when the reply
/// could not be parsed; range enforcement happens in clamp_*.
struct RawScore {
  std::optional<int> value;
  std::string raw;
};

/// A clamped score plus the reason it was clamped, if it was.
struct ClampedScore {
  int value = 0;
  std::optional<std::string> warning;
};

/// Anything outside {0,1}, or unparseable, becomes 0.
ClampedScore clamp_exploration(const RawScore& s);
/// Clamped into [0,2]; unparseable becomes 0.
ClampedScore clamp_retrieval(const RawScore& s);

struct Summary {
  std::string doc_id;
  std::string snippet;
};

/// Generator side: checklist, subqueries, summaries, final answer.
/// Implementations must be safe to call from several searches at once.
class PolicyBackend {
 public:
  virtual ~PolicyBackend() = default;
  virtual std::string id() const = 0;

  virtual std::string generate_checklist(std::string_view query, CallContext& ctx) const = 0;
  virtual std::vector<std::string> propose_subqueries(const HistoryContext& history,
                                                      const Checklist& checklist,
                                                      const KnowledgeMemory& memory, int m_q,
                                                      CallContext& ctx) const = 0;
  /// Throws kNoDocuments for an empty candidate list.
  virtual Summary summarize(std::string_view subquery, std::span<const Document> candidates,
                            CallContext& ctx) const = 0;
  virtual std::string generate_answer(std::string_view query, const KnowledgeMemory& memory,
                                      CallContext& ctx) const = 0;

  /// Optional hook: a rewritten checklist after feedback. Off unless the
  /// search config enables it.
  virtual std::optional<std::string> rewrite_checklist(const Checklist& /*checklist*/,
                                                       const ProgressFeedback& /*feedback*/,
                                                       CallContext& /*ctx*/) const {
    return std::nullopt;
  }
};

/// Evaluator side: exploration reward, retrieval reward, progress feedback.
class RewardBackend {
 public:
  virtual ~RewardBackend() = default;
  virtual std::string id() const = 0;

  virtual RawScore exploration_reward(std::string_view subquery, const Checklist& checklist,
                                      const HistoryContext& history, CallContext& ctx) const = 0;
  virtual RawScore retrieval_reward(std::string_view subquery, std::string_view snippet,
                                    CallContext& ctx) const = 0;
  /// `candidate_snippet` is the snippet just extracted for `subquery`,
  /// whether or not memory admitted it. nullopt means the reply was
  /// malformed; the engine substitutes empty feedback.
  virtual std::optional<ProgressFeedback> progress_feedback(
      std::string_view subquery, const Checklist& checklist, const HistoryContext& history,
      const KnowledgeMemory& memory, std::string_view candidate_snippet,
      CallContext& ctx) const = 0;
};

class SearchBackend {
 public:
  virtual ~SearchBackend() = default;
  virtual std::string id() const = 0;
  /// At most top_k documents, best first.
  virtual std::vector<Document> search(std::string_view subquery, int top_k,
                                       CallContext& ctx) const = 0;
};

/// Prompt-ready rendering of H: every path subquery plus the latest feedback.
std::string render_history(const HistoryContext& history);

}  // namespace hgmcts
