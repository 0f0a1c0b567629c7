// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "hgmcts/backends.hpp"

namespace hgmcts {

using Millis = std::chrono::milliseconds;

/// How a transport call is retried. Attempt k (k >= 1) waits
/// backoff[min(k - 1, size - 1)] first; an empty schedule means no wait.
struct RetrySchedule {
  int max_retries = 3;
  std::vector<Millis> backoff{Millis(500), Millis(1000), Millis(2000)};
  Millis timeout{60000};

  Millis delay_before(int retry) const;
};

struct LlmEndpointConfig {
  std::string base_url;  // e.g. https://api.example.com/v1
  std::string api_key;
  std::string model_name;
  double temperature = 0.9;
  double top_p = 1.0;
  RetrySchedule retry;
  /// Put prompt and reply text into transport trace events.
  bool debug_prompts = false;

  /// Throws kConfiguration.
  void validate() const;
};

/// Where to find results in a provider's JSON reply. Paths are dotted
/// ("data.items"); field paths are relative to one result.
struct SearchResponseMapping {
  std::string results_path = "results";
  std::string title_field = "title";
  std::string link_field = "link";
  std::string snippet_field = "snippet";
  std::string content_field = "content";
};

struct SearchEndpointConfig {
  std::string base_url;  // GET target, e.g. https://search.example.com/v1/search
  std::string api_key;
  std::string api_key_header = "X-API-Key";
  std::string query_param = "q";
  std::string count_param = "num";
  int top_k = 3;
  SearchResponseMapping mapping;
  RetrySchedule retry;

  void validate() const;
};

/// Process-wide bound on in-flight HTTP requests, shared by every client.
class RequestLimiter {
 public:
  static constexpr int kDefaultLimit = 4;
  static RequestLimiter& global();

  explicit RequestLimiter(int limit = kDefaultLimit);
  /// Throws kConfiguration for limit < 1.
  void set_limit(int limit);
  int limit() const;

  void acquire();
  void release();

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  int limit_;
  int in_flight_ = 0;
};

/// Replaces every occurrence of `secret` in `text`.
std::string redact(std::string text, std::string_view secret);

/// Text of the first choice. Retries network errors, 5xx and 429 per the
/// schedule; other 4xx are kConfiguration with no retry; running out of
/// retries is kBackendUnavailable. Sizes go to `ctx` as transport events.
std::string chat_complete(const LlmEndpointConfig& config, std::string_view system_prompt,
                          std::string_view user_prompt, CallContext& ctx);

/// Provider order, at most top_k. Missing content falls back to the
/// snippet. Transport, status and shape problems are kBackendUnavailable
/// (4xx other than 429: kConfiguration).
std::vector<Document> web_search(const SearchEndpointConfig& config, std::string_view subquery, int top_k,
                                 CallContext& ctx);

/// First standalone integer ("Score: 1", "2 out of 2"). Throws kParseFailed.
int parse_score(std::string_view raw);
/// Fenced or bare JSON object {solved_goal_ids, unsolved_goal_ids,
/// new_goals, terminate, text}, else line patterns SOLVED:, UNSOLVED:,
/// NEW:, DONE. Throws kParseFailed when neither is present.
ProgressFeedback parse_feedback(std::string_view raw);
/// List items, or a JSON array of strings. Throws kParseFailed.
std::vector<std::string> parse_subquery_list(std::string_view raw);

/// Prompt templates keyed by name. Placeholders {query}, {checklist},
/// {memory}, {history}, {subquery}, {snippet}, {documents}, {m_q} are
/// substituted; anything else is left as written.
class PromptSet {
 public:
  static const std::vector<std::string>& names();
  static PromptSet defaults();
  /// Defaults overridden by <name>.txt files present in `dir`.
  static PromptSet load_directory(const std::filesystem::path& dir);

  const std::string& get(const std::string& name) const;
  void set(const std::string& name, std::string text);

 private:
  std::map<std::string, std::string> templates_;
};

std::string fill_template(std::string_view tmpl, const std::map<std::string, std::string>& values);

/// Policy and reward contracts over a chat-completion endpoint. Malformed
/// replies fail open: scores become unparsed (clamped to 0 upstream),
/// feedback becomes nullopt, a subquery reply with no list yields none.
/// `memory_budget` caps the rendered memory in each prompt (characters).
class RemoteModel final : public PolicyBackend, public RewardBackend {
 public:
  RemoteModel(LlmEndpointConfig config, PromptSet prompts, std::size_t memory_budget = kDefaultMemoryBudget);

  std::string id() const override;

  std::string generate_checklist(std::string_view query, CallContext& ctx) const override;
  std::vector<std::string> propose_subqueries(const HistoryContext& history, const Checklist& checklist,
                                              const KnowledgeMemory& memory, int m_q,
                                              CallContext& ctx) const override;
  Summary summarize(std::string_view subquery, std::span<const Document> candidates,
                    CallContext& ctx) const override;
  std::string generate_answer(std::string_view query, const KnowledgeMemory& memory,
                              CallContext& ctx) const override;

  RawScore exploration_reward(std::string_view subquery, const Checklist& checklist,
                              const HistoryContext& history, CallContext& ctx) const override;
  RawScore retrieval_reward(std::string_view subquery, std::string_view snippet,
                            CallContext& ctx) const override;
  std::optional<ProgressFeedback> progress_feedback(std::string_view subquery, const Checklist& checklist,
                                                    const HistoryContext& history,
                                                    const KnowledgeMemory& memory,
                                                    std::string_view candidate_snippet,
                                                    CallContext& ctx) const override;

 private:
  std::string ask(const std::string& name, const std::map<std::string, std::string>& values,
                  CallContext& ctx) const;

  LlmEndpointConfig config_;
  PromptSet prompts_;
  std::size_t memory_budget_;
};

class WebSearchClient final : public SearchBackend {
 public:
  explicit WebSearchClient(SearchEndpointConfig config);
  std::string id() const override { return "web-search"; }
  std::vector<Document> search(std::string_view subquery, int top_k, CallContext& ctx) const override;

 private:
  SearchEndpointConfig config_;
};

}  // namespace hgmcts
