// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hgmcts/error.hpp"
#include "hgmcts/text.hpp"

namespace hgmcts {
namespace {

namespace pt = boost::property_tree;

const std::set<std::string> kLlmKeys{"base_url",    "model",      "api_key_env", "temperature",      "top_p",
                                     "timeout_ms", "max_retries", "retry_backoff_ms", "debug_prompts"};

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> k{
      {"search",
       {"max_simulations", "max_depth", "uct_weight", "subqueries_per_expansion", "top_k", "memory_budget", "seed",
        "reward_mode", "checklist_guidance", "checklist_rewrite"}},
      {"llm", kLlmKeys},
      {"reward_llm", kLlmKeys},
      {"web_search",
       {"base_url", "api_key_env", "api_key_header", "query_param", "count_param", "top_k", "results_path",
        "title_field", "link_field", "snippet_field", "content_field", "timeout_ms", "max_retries",
        "retry_backoff_ms"}},
      {"prompts", {"dir"}},
      {"transport", {"max_concurrent_requests"}},
  };
  return k;
}

class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  std::optional<std::string> raw(const std::string& key) const {
    if (tree_ == nullptr) return std::nullopt;
    auto v = tree_->get_optional<std::string>(key);
    if (!v) return std::nullopt;
    return std::string(text::trim(*v));
  }

  template <typename T>
  void read(const std::string& key, T& out) const {
    const auto v = raw(key);
    if (!v) return;
    if constexpr (std::is_same_v<T, std::string>) {
      out = *v;
    } else if constexpr (std::is_same_v<T, bool>) {
      const auto l = text::to_lower(*v);
      if (l == "true" || l == "yes" || l == "on" || l == "1") {
        out = true;
      } else if (l == "false" || l == "no" || l == "off" || l == "0") {
        out = false;
      } else {
        bad(key, *v);
      }
    } else {
      if (std::is_unsigned_v<T> && v->starts_with('-')) bad(key, *v);
      std::istringstream in(*v);
      T parsed{};
      in >> parsed;
      if (in.fail() || !in.eof()) bad(key, *v);
      out = parsed;
    }
  }

  void read_millis(const std::string& key, Millis& out) const {
    long long ms = out.count();
    read(key, ms);
    out = Millis(ms);
  }

  void read_schedule(const std::string& key, std::vector<Millis>& out) const {
    const auto v = raw(key);
    if (!v) return;
    out.clear();
    std::string item;
    std::istringstream in(*v);
    while (std::getline(in, item, ',')) {
      const auto t = std::string(text::trim(item));
      if (t.empty()) continue;
      std::istringstream num(t);
      long long ms = 0;
      num >> ms;
      if (num.fail() || !num.eof() || ms < 0) bad(key, *v);
      out.push_back(Millis(ms));
    }
  }

  [[noreturn]] void bad(const std::string& key, const std::string& value) const {
    throw Error(ErrorCode::kConfiguration, "[" + name_ + "] " + key + ": cannot use value '" + value + "'");
  }

 private:
  const pt::ptree* tree_;
  std::string name_;
};

void read_llm(const Section& s, LlmEndpointConfig& c, std::string& key_env) {
  s.read("base_url", c.base_url);
  s.read("model", c.model_name);
  s.read("api_key_env", key_env);
  s.read("temperature", c.temperature);
  s.read("top_p", c.top_p);
  s.read_millis("timeout_ms", c.retry.timeout);
  s.read("max_retries", c.retry.max_retries);
  s.read_schedule("retry_backoff_ms", c.retry.backoff);
  s.read("debug_prompts", c.debug_prompts);
}

std::string env_secret(const std::string& var) {
  const char* v = var.empty() ? nullptr : std::getenv(var.c_str());
  return v == nullptr ? std::string() : std::string(v);
}

}  // namespace

AppConfig parse_config(std::string_view ini, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(ini)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::kConfiguration, "config line " + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end() || !body.data().empty()) {
      throw Error(ErrorCode::kConfiguration, "unknown config section or top-level key '" + section + "'");
    }
    for (const auto& [key, _] : body) {
      if (!it->second.contains(key)) {
        throw Error(ErrorCode::kConfiguration, "unknown key '" + key + "' in [" + section + "]");
      }
    }
  }
  auto section = [&](const std::string& name) { return Section(tree.get_child_optional(name).get_ptr(), name); };

  AppConfig c;
  const auto search = section("search");
  search.read("max_simulations", c.search.max_simulations);
  search.read("max_depth", c.search.max_depth);
  search.read("uct_weight", c.search.uct_weight);
  search.read("subqueries_per_expansion", c.search.subqueries_per_expansion);
  search.read("top_k", c.search.top_k);
  search.read("memory_budget", c.search.memory_budget);
  search.read("seed", c.search.seed);
  std::string mode(to_string(c.search.reward_mode));
  search.read("reward_mode", mode);
  if (mode == "product") {
    c.search.reward_mode = RewardMode::kProduct;
  } else if (mode == "additive") {
    c.search.reward_mode = RewardMode::kAdditive;
  } else {
    search.bad("reward_mode", mode);
  }
  search.read("checklist_guidance", c.search.checklist_guidance);
  search.read("checklist_rewrite", c.search.policy_checklist_rewrite);
  c.search.validate();

  read_llm(section("llm"), c.policy_llm, c.policy_api_key_env);
  c.reward_llm = c.policy_llm;
  c.reward_api_key_env = c.policy_api_key_env;
  read_llm(section("reward_llm"), c.reward_llm, c.reward_api_key_env);

  const auto web = section("web_search");
  web.read("base_url", c.web_search.base_url);
  web.read("api_key_env", c.search_api_key_env);
  web.read("api_key_header", c.web_search.api_key_header);
  web.read("query_param", c.web_search.query_param);
  web.read("count_param", c.web_search.count_param);
  web.read("top_k", c.web_search.top_k);
  web.read("results_path", c.web_search.mapping.results_path);
  web.read("title_field", c.web_search.mapping.title_field);
  web.read("link_field", c.web_search.mapping.link_field);
  web.read("snippet_field", c.web_search.mapping.snippet_field);
  web.read("content_field", c.web_search.mapping.content_field);
  web.read_millis("timeout_ms", c.web_search.retry.timeout);
  web.read("max_retries", c.web_search.retry.max_retries);
  web.read_schedule("retry_backoff_ms", c.web_search.retry.backoff);

  std::string dir;
  section("prompts").read("dir", dir);
  if (!dir.empty()) {
    std::filesystem::path p(dir);
    c.prompts_dir = p.is_absolute() ? p : base_dir / p;
  }
  section("transport").read("max_concurrent_requests", c.max_concurrent_requests);
  if (c.max_concurrent_requests < 1) {
    throw Error(ErrorCode::kConfiguration, "[transport] max_concurrent_requests must be >= 1");
  }
  return c;
}

AppConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::kConfiguration, "cannot read config file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), file.parent_path());
}

void resolve_llm_secrets(AppConfig& config) {
  for (auto [llm, var] : {std::pair{&config.policy_llm, &config.policy_api_key_env},
                          std::pair{&config.reward_llm, &config.reward_api_key_env}}) {
    llm->api_key = env_secret(*var);
    if (llm->api_key.empty()) {
      throw Error(ErrorCode::kConfiguration, "environment variable " + *var + " (LLM API key) is not set");
    }
  }
}

void resolve_search_secret(AppConfig& config, bool required) {
  config.web_search.api_key = env_secret(config.search_api_key_env);
  if (required && config.web_search.api_key.empty()) {
    throw Error(ErrorCode::kConfiguration,
                "environment variable " + config.search_api_key_env + " (search API key) is not set");
  }
}

}  // namespace hgmcts
