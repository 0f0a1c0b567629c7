// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/config.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "hgmcts/error.hpp"

namespace hgmcts {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(Config, EmptyFileGivesDefaults) {
  const auto c = parse_config("");
  EXPECT_EQ(c.search.max_simulations, 40);
  EXPECT_EQ(c.search.max_depth, 6);
  EXPECT_DOUBLE_EQ(c.search.uct_weight, 0.2);
  EXPECT_EQ(c.search.subqueries_per_expansion, 3);
  EXPECT_EQ(c.search.top_k, 3);
  EXPECT_EQ(c.policy_llm.temperature, 0.9);
  EXPECT_EQ(c.policy_llm.top_p, 1.0);
  EXPECT_EQ(c.web_search.top_k, 3);
  EXPECT_EQ(c.max_concurrent_requests, 4);
  EXPECT_FALSE(c.prompts_dir.has_value());
}

TEST(Config, AllSections) {
  const auto c = parse_config(R"(
; comment
[search]
max_simulations = 12
uct_weight = 0.5
reward_mode = additive
checklist_guidance = no
seed = 7

[llm]
base_url = http://127.0.0.1:9/v1
model = m1
api_key_env = MY_KEY
temperature = 0.2
retry_backoff_ms = 10, 20 ,30
timeout_ms = 1500

[reward_llm]
model = judge

[web_search]
base_url = http://127.0.0.1:9/search
results_path = data.items
link_field = url
top_k = 5

[prompts]
dir = my_prompts

[transport]
max_concurrent_requests = 2
)",
                              "/etc/hg");
  EXPECT_EQ(c.search.max_simulations, 12);
  EXPECT_EQ(c.search.uct_weight, 0.5);
  EXPECT_EQ(c.search.reward_mode, RewardMode::kAdditive);
  EXPECT_FALSE(c.search.checklist_guidance);
  EXPECT_EQ(c.search.seed, 7u);
  EXPECT_EQ(c.policy_llm.model_name, "m1");
  EXPECT_EQ(c.policy_api_key_env, "MY_KEY");
  EXPECT_EQ(c.policy_llm.retry.backoff, (std::vector<Millis>{Millis(10), Millis(20), Millis(30)}));
  EXPECT_EQ(c.policy_llm.retry.timeout, Millis(1500));
  EXPECT_EQ(c.reward_llm.model_name, "judge");
  EXPECT_EQ(c.reward_llm.base_url, c.policy_llm.base_url);
  EXPECT_EQ(c.reward_api_key_env, "MY_KEY");
  EXPECT_EQ(c.reward_llm.temperature, 0.2);
  EXPECT_EQ(c.web_search.mapping.results_path, "data.items");
  EXPECT_EQ(c.web_search.mapping.link_field, "url");
  EXPECT_EQ(c.web_search.top_k, 5);
  EXPECT_EQ(*c.prompts_dir, std::filesystem::path("/etc/hg/my_prompts"));
  EXPECT_EQ(c.max_concurrent_requests, 2);
}

TEST(Config, Rejections) {
  EXPECT_EQ(code_of([] { parse_config("[serch]\nx = 1\n"); }), ErrorCode::kConfiguration);
  EXPECT_EQ(code_of([] { parse_config("[search]\nmax_sims = 1\n"); }), ErrorCode::kConfiguration);
  EXPECT_EQ(code_of([] { parse_config("[search]\nmax_simulations = many\n"); }), ErrorCode::kConfiguration);
  EXPECT_EQ(code_of([] { parse_config("[search]\nmax_simulations = 0\n"); }), ErrorCode::kConfiguration);
  EXPECT_EQ(code_of([] { parse_config("[search]\nmemory_budget = -4\n"); }), ErrorCode::kConfiguration);
  EXPECT_EQ(code_of([] { parse_config("[search]\nreward_mode = sum\n"); }), ErrorCode::kConfiguration);
  EXPECT_EQ(code_of([] { parse_config("[search]\nchecklist_guidance = maybe\n"); }), ErrorCode::kConfiguration);
  EXPECT_EQ(code_of([] { parse_config("[llm]\nretry_backoff_ms = 1,x\n"); }), ErrorCode::kConfiguration);
  EXPECT_EQ(code_of([] { parse_config("stray = 1\n"); }), ErrorCode::kConfiguration);
  EXPECT_EQ(code_of([] { parse_config("[search\n"); }), ErrorCode::kConfiguration);
  EXPECT_EQ(code_of([] { load_config("/nonexistent/hgmcts.ini"); }), ErrorCode::kConfiguration);
}

TEST(Config, SecretsFromEnvironment) {
  auto c = parse_config("[llm]\napi_key_env = HGMCTS_TEST_KEY_A\n[web_search]\napi_key_env = HGMCTS_TEST_KEY_B\n");
  ::unsetenv("HGMCTS_TEST_KEY_A");
  ::unsetenv("HGMCTS_TEST_KEY_B");
  try {
    resolve_llm_secrets(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfiguration);
    EXPECT_NE(std::string(e.what()).find("HGMCTS_TEST_KEY_A"), std::string::npos);
  }
  EXPECT_NO_THROW(resolve_search_secret(c, false));
  EXPECT_THROW(resolve_search_secret(c, true), Error);
  ::setenv("HGMCTS_TEST_KEY_A", "secret-a", 1);
  ::setenv("HGMCTS_TEST_KEY_B", "secret-b", 1);
  resolve_llm_secrets(c);
  resolve_search_secret(c, true);
  EXPECT_EQ(c.policy_llm.api_key, "secret-a");
  EXPECT_EQ(c.reward_llm.api_key, "secret-a");
  EXPECT_EQ(c.web_search.api_key, "secret-b");
}

TEST(Config, LoadFileResolvesPromptsRelativeToIt) {
  const auto dir = std::filesystem::temp_directory_path() / "hgmcts_config_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "c.ini") << "[prompts]\ndir = p\n[search]\ntop_k = 4\n";
  const auto c = load_config(dir / "c.ini");
  EXPECT_EQ(*c.prompts_dir, dir / "p");
  EXPECT_EQ(c.search.top_k, 4);
}

}  // namespace
}  // namespace hgmcts
