// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "hgmcts/orchestrator.hpp"
#include "hgmcts/remote.hpp"

namespace hgmcts {

/// Everything a config file can set. Secrets are never stored in the file;
/// it names the environment variables that hold them.
///
///   [search]     max_simulations max_depth uct_weight subqueries_per_expansion
///                top_k memory_budget seed reward_mode checklist_guidance
///                checklist_rewrite
///   [llm]        base_url model api_key_env temperature top_p timeout_ms
///                max_retries retry_backoff_ms debug_prompts
///   [reward_llm] same keys as [llm]; unset keys inherit from [llm]
///   [web_search] base_url api_key_env api_key_header query_param count_param
///                top_k results_path title_field link_field snippet_field
///                content_field timeout_ms max_retries retry_backoff_ms
///   [prompts]    dir (relative paths resolve against the config file)
///   [transport]  max_concurrent_requests
struct AppConfig {
  SearchConfig search;
  LlmEndpointConfig policy_llm;
  LlmEndpointConfig reward_llm;
  std::string policy_api_key_env = "HGMCTS_LLM_API_KEY";
  std::string reward_api_key_env = "HGMCTS_LLM_API_KEY";
  SearchEndpointConfig web_search;
  std::string search_api_key_env = "HGMCTS_SEARCH_API_KEY";
  std::optional<std::filesystem::path> prompts_dir;
  int max_concurrent_requests = RequestLimiter::kDefaultLimit;
};

/// Parses INI text. Unknown sections or keys and unparseable values are
/// kConfiguration errors naming the key. `base_dir` anchors relative paths.
AppConfig parse_config(std::string_view ini, const std::filesystem::path& base_dir = {});
/// Throws kConfiguration if the file is missing or invalid.
AppConfig load_config(const std::filesystem::path& file);

/// Reads the LLM keys from the environment. Throws kConfiguration naming
/// the variable (never its value) when it is unset or empty.
void resolve_llm_secrets(AppConfig& config);
/// Same for the web-search key; a missing variable is an error only when
/// `required`.
void resolve_search_secret(AppConfig& config, bool required);

}  // namespace hgmcts
