// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/remote.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>
#include <thread>

#include "hgmcts/error.hpp"
#include "hgmcts/text.hpp"

namespace hgmcts {
namespace {

constexpr std::size_t kErrorBodyExcerpt = 200;
constexpr std::size_t kDocumentCharsInPrompt = 2000;

struct Target {
  std::string origin;  // scheme://host[:port]
  std::string path;    // no trailing slash
};

Target split_url(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/?#]+)(/[^?#]*)?$)", std::regex::icase);
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw Error(ErrorCode::kConfiguration, "not an http(s) URL: " + url);
  std::string path = m[2].matched ? m[2].str() : "";
  while (!path.empty() && path.back() == '/') path.pop_back();
  return {m[1].str(), path};
}

struct LimiterGuard {
  LimiterGuard() { RequestLimiter::global().acquire(); }
  ~LimiterGuard() { RequestLimiter::global().release(); }
  LimiterGuard(const LimiterGuard&) = delete;
  LimiterGuard& operator=(const LimiterGuard&) = delete;
};

struct Reply {
  int status = 0;
  std::string body;
};

std::string excerpt(const std::string& body, std::string_view secret) {
  auto s = redact(body.substr(0, kErrorBodyExcerpt), secret);
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

Reply send_with_retry(const std::string& label, const std::string& url, const RetrySchedule& retry,
                      std::string_view secret, std::size_t request_bytes, CallContext& ctx,
                      const std::function<httplib::Result(httplib::Client&, const std::string& path)>& call) {
  const auto target = split_url(url);
  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt <= retry.max_retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(retry.delay_before(attempt));
    httplib::Result res{nullptr, httplib::Error::Unknown};
    {
      LimiterGuard guard;
      httplib::Client client(target.origin);
      const auto secs = std::chrono::duration_cast<std::chrono::seconds>(retry.timeout);
      const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(retry.timeout - secs);
      client.set_connection_timeout(secs.count(), usecs.count());
      client.set_read_timeout(secs.count(), usecs.count());
      client.set_write_timeout(secs.count(), usecs.count());
      res = call(client, target.path);
    }
    nlohmann::json event{{"endpoint", label}, {"attempt", attempt}, {"request_bytes", request_bytes}};
    if (!res) {
      last_failure = "network error: " + httplib::to_string(res.error());
      event["error"] = last_failure;
      ctx.transport(std::move(event));
      continue;
    }
    event["status"] = res->status;
    event["response_bytes"] = res->body.size();
    ctx.transport(std::move(event));
    if (res->status >= 200 && res->status < 300) return {res->status, res->body};
    if (res->status == 429 || res->status >= 500) {
      last_failure = "HTTP " + std::to_string(res->status);
      continue;
    }
    throw Error(ErrorCode::kConfiguration, label + " endpoint rejected the request with HTTP " +
                                               std::to_string(res->status) + ": " + excerpt(res->body, secret));
  }
  throw Error(ErrorCode::kBackendUnavailable, label + " endpoint unavailable after " +
                                                  std::to_string(retry.max_retries + 1) +
                                                  " attempt(s): " + last_failure);
}

const nlohmann::json* walk(const nlohmann::json& j, std::string_view dotted) {
  const nlohmann::json* cur = &j;
  std::size_t start = 0;
  while (start <= dotted.size()) {
    const auto end = std::min(dotted.find('.', start), dotted.size());
    const std::string key(dotted.substr(start, end - start));
    if (!key.empty()) {
      if (!cur->is_object() || !cur->contains(key)) return nullptr;
      cur = &(*cur)[key];
    }
    start = end + 1;
  }
  return cur;
}

std::string string_at(const nlohmann::json& item, std::string_view path) {
  const auto* v = walk(item, path);
  return v != nullptr && v->is_string() ? v->get<std::string>() : std::string();
}

bool standalone_boundary(char c) { return !std::isalnum(static_cast<unsigned char>(c)) && c != '_'; }

std::optional<nlohmann::json> embedded_json(std::string_view raw, char open, char close) {
  static const std::regex fence("```[A-Za-z]*[ \\t]*\\n?([\\s\\S]*?)```");
  const std::string s(raw);
  std::vector<std::string> candidates;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), fence); it != std::sregex_iterator(); ++it) {
    candidates.push_back((*it)[1].str());
  }
  const auto first = s.find(open);
  const auto last = s.rfind(close);
  if (first != std::string::npos && last != std::string::npos && last > first) {
    candidates.push_back(s.substr(first, last - first + 1));
  }
  for (const auto& c : candidates) {
    auto j = nlohmann::json::parse(c, nullptr, false);
    if (j.is_discarded()) continue;
    if ((open == '{' && j.is_object()) || (open == '[' && j.is_array())) return j;
  }
  return std::nullopt;
}

std::set<GoalId> ids_from_json(const nlohmann::json& j, const char* key) {
  std::set<GoalId> out;
  if (!j.contains(key)) return out;
  const auto& arr = j.at(key);
  if (!arr.is_array()) throw Error(ErrorCode::kParseFailed, std::string(key) + " is not an array");
  for (const auto& v : arr) {
    if (v.is_number_integer()) {
      out.insert(v.get<GoalId>());
    } else if (v.is_string()) {
      out.insert(parse_score(v.get<std::string>()));
    } else {
      throw Error(ErrorCode::kParseFailed, std::string(key) + " holds a non-integer");
    }
  }
  return out;
}

std::set<GoalId> ids_from_text(std::string_view s) {
  std::set<GoalId> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.insert(std::stoi(cur));
    cur.clear();
  };
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c)) && cur.size() < 9) {
      cur.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  return out;
}

std::optional<std::string_view> after_prefix(std::string_view line, std::string_view prefix) {
  if (line.size() < prefix.size()) return std::nullopt;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(line[i])) != prefix[i]) return std::nullopt;
  }
  return text::trim(line.substr(prefix.size()));
}

std::string strip_quotes(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) s = s.substr(1, s.size() - 2);
  return std::string(text::trim(s));
}

std::string render_documents(std::span<const Document> docs) {
  std::string out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += "[" + std::to_string(i + 1) + "] " + docs[i].title + " (" + docs[i].locator + ")\n";
    out += docs[i].content.substr(0, kDocumentCharsInPrompt);
  }
  return out;
}

const std::map<std::string, std::string>& default_templates() {
  static const std::map<std::string, std::string> t{
      {"system",
       "You are a careful research assistant. Answer in the exact format each request asks for."},
      {"checklist",
       "Question: {query}\n\n"
       "Break the question into the distinct pieces of information needed to answer it. "
       "Write them as a numbered list, one short goal per line, and nothing else."},
      {"subqueries",
       "Question: {query}\n\nChecklist:\n{checklist}\n\nSearch so far:\n{history}\n\n"
       "Known facts:\n{memory}\n\n"
       "Write at most {m_q} new web search queries that target goals still marked [todo]. "
       "Do not repeat earlier queries. Answer with a numbered list of queries only."},
      {"summarize",
       "Search query: {subquery}\n\nResults:\n{documents}\n\n"
       "Pick the single result most useful for the query and extract the facts it gives, "
       "in one or two sentences. Reply with a JSON object "
       "{\"doc\": <result number>, \"snippet\": \"<facts>\"}."},
      {"exploration_reward",
       "Checklist:\n{checklist}\n\nSearch so far:\n{history}\n\nProposed query: {subquery}\n\n"
       "Does the proposed query work toward a goal that is still [todo]? Reply with 1 for yes "
       "or 0 for no, then a short reason."},
      {"retrieval_reward",
       "Query: {subquery}\n\nExtracted text: {snippet}\n\n"
       "How well does the text answer the query? Reply 2 if it answers it fully, 1 if it "
       "helps partly, 0 if it is irrelevant, then a short reason."},
      {"feedback",
       "Question: {query}\n\nChecklist:\n{checklist}\n\nKnown facts:\n{memory}\n\n"
       "Newest query: {subquery}\nNewest finding: {snippet}\n\n"
       "Judge progress. Reply with a JSON object {\"text\": \"<one line summary>\", "
       "\"solved_goal_ids\": [ids now answered by the known facts], \"unsolved_goal_ids\": [ids still open], "
       "\"new_goals\": [goals the checklist is missing], \"terminate\": <true when every goal is answered>}."},
      {"answer",
       "Question: {query}\n\nKnown facts:\n{memory}\n\n"
       "Answer the question using the known facts. Give the answer only, as briefly as possible."},
  };
  return t;
}

}  // namespace

Millis RetrySchedule::delay_before(int retry) const {
  if (backoff.empty() || retry < 1) return Millis(0);
  return backoff[std::min(static_cast<std::size_t>(retry - 1), backoff.size() - 1)];
}

void LlmEndpointConfig::validate() const {
  if (base_url.empty()) throw Error(ErrorCode::kConfiguration, "llm base_url is not set");
  split_url(base_url);
  if (model_name.empty()) throw Error(ErrorCode::kConfiguration, "llm model is not set");
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw Error(ErrorCode::kConfiguration, "temperature must be in [0, 2]");
  }
  if (!(top_p > 0.0 && top_p <= 1.0)) throw Error(ErrorCode::kConfiguration, "top_p must be in (0, 1]");
  if (retry.max_retries < 0) throw Error(ErrorCode::kConfiguration, "max_retries must be >= 0");
  if (retry.timeout <= Millis(0)) throw Error(ErrorCode::kConfiguration, "timeout must be positive");
}

void SearchEndpointConfig::validate() const {
  if (base_url.empty()) throw Error(ErrorCode::kConfiguration, "web_search base_url is not set");
  split_url(base_url);
  if (top_k < 1) throw Error(ErrorCode::kConfiguration, "web_search top_k must be >= 1");
  if (retry.max_retries < 0) throw Error(ErrorCode::kConfiguration, "max_retries must be >= 0");
  if (retry.timeout <= Millis(0)) throw Error(ErrorCode::kConfiguration, "timeout must be positive");
}

RequestLimiter& RequestLimiter::global() {
  static RequestLimiter limiter;
  return limiter;
}

RequestLimiter::RequestLimiter(int limit) : limit_(limit) {
  if (limit < 1) throw Error(ErrorCode::kConfiguration, "request limit must be >= 1");
}

void RequestLimiter::set_limit(int limit) {
  if (limit < 1) throw Error(ErrorCode::kConfiguration, "request limit must be >= 1");
  {
    std::lock_guard lock(mu_);
    limit_ = limit;
  }
  cv_.notify_all();
}

int RequestLimiter::limit() const {
  std::lock_guard lock(mu_);
  return limit_;
}

void RequestLimiter::acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return in_flight_ < limit_; });
  ++in_flight_;
}

void RequestLimiter::release() {
  {
    std::lock_guard lock(mu_);
    --in_flight_;
  }
  cv_.notify_one();
}

std::string redact(std::string text, std::string_view secret) {
  if (secret.empty()) return text;
  for (auto pos = text.find(secret); pos != std::string::npos; pos = text.find(secret, pos)) {
    text.replace(pos, secret.size(), "[redacted]");
    pos += 10;
  }
  return text;
}

std::string chat_complete(const LlmEndpointConfig& config, std::string_view system_prompt,
                          std::string_view user_prompt, CallContext& ctx) {
  const nlohmann::json request{
      {"model", config.model_name},
      {"messages",
       {{{"role", "system"}, {"content", system_prompt}}, {{"role", "user"}, {"content", user_prompt}}}},
      {"temperature", config.temperature},
      {"top_p", config.top_p}};
  const auto body = request.dump();
  httplib::Headers headers;
  if (!config.api_key.empty()) headers.emplace("Authorization", "Bearer " + config.api_key);
  if (config.debug_prompts) {
    ctx.transport({{"endpoint", "chat"}, {"prompt", redact(std::string(user_prompt), config.api_key)}});
  }
  const auto reply = send_with_retry("chat", config.base_url, config.retry, config.api_key, body.size(), ctx,
                                     [&](httplib::Client& c, const std::string& path) {
                                       return c.Post(path + "/chat/completions", headers, body,
                                                     "application/json");
                                     });
  const auto j = nlohmann::json::parse(reply.body, nullptr, false);
  const nlohmann::json* content = nullptr;
  if (const auto* choices = j.is_discarded() ? nullptr : walk(j, "choices");
      choices != nullptr && choices->is_array() && !choices->empty()) {
    content = walk(choices->front(), "message.content");
  }
  if (content == nullptr || !content->is_string()) {
    throw Error(ErrorCode::kBackendUnavailable,
                "chat endpoint returned a malformed reply: " + excerpt(reply.body, config.api_key));
  }
  auto text = content->get<std::string>();
  if (config.debug_prompts) ctx.transport({{"endpoint", "chat"}, {"reply", redact(text, config.api_key)}});
  return text;
}

std::vector<Document> web_search(const SearchEndpointConfig& config, std::string_view subquery, int top_k,
                                 CallContext& ctx) {
  if (top_k < 1) throw Error(ErrorCode::kInvalidArgument, "top_k must be >= 1");
  httplib::Params params{{config.query_param, std::string(subquery)}};
  if (!config.count_param.empty()) params.emplace(config.count_param, std::to_string(top_k));
  httplib::Headers headers;
  if (!config.api_key.empty()) headers.emplace(config.api_key_header, config.api_key);
  const auto reply = send_with_retry("web_search", config.base_url, config.retry, config.api_key, subquery.size(),
                                     ctx, [&](httplib::Client& c, const std::string& path) {
                                       return c.Get(path.empty() ? "/" : path, params, headers);
                                     });
  const auto j = nlohmann::json::parse(reply.body, nullptr, false);
  const auto* results = j.is_discarded() ? nullptr : walk(j, config.mapping.results_path);
  if (results == nullptr || !(results->is_array() || results->is_null())) {
    throw Error(ErrorCode::kBackendUnavailable,
                "web_search reply has no '" + config.mapping.results_path + "' array");
  }
  std::vector<Document> docs;
  if (results->is_null()) return docs;
  std::set<std::string> seen;
  for (const auto& item : *results) {
    if (static_cast<int>(docs.size()) == top_k) break;
    Document d;
    d.locator = string_at(item, config.mapping.link_field);
    if (d.locator.empty() || !seen.insert(d.locator).second) {
      ctx.warn("web_search result without a usable link skipped");
      continue;
    }
    d.doc_id = d.locator;
    d.title = string_at(item, config.mapping.title_field);
    d.content = string_at(item, config.mapping.content_field);
    if (text::trim(d.content).empty()) d.content = string_at(item, config.mapping.snippet_field);
    docs.push_back(std::move(d));
  }
  return docs;
}

int parse_score(std::string_view raw) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(raw[i]))) continue;
    std::size_t begin = i;
    bool negative = false;
    if (begin > 0 && raw[begin - 1] == '-') {
      negative = true;
      --begin;
    }
    std::size_t end = i;
    while (end < raw.size() && std::isdigit(static_cast<unsigned char>(raw[end]))) ++end;
    const bool left_ok = begin == 0 || (standalone_boundary(raw[begin - 1]) && raw[begin - 1] != '.');
    const bool decimal = end + 1 < raw.size() && (raw[end] == '.' || raw[end] == ',') &&
                         std::isdigit(static_cast<unsigned char>(raw[end + 1]));
    const bool right_ok = end == raw.size() || (standalone_boundary(raw[end]) && !decimal);
    if (left_ok && right_ok) {
      int value = 0;
      const auto [ptr, ec] = std::from_chars(raw.data() + i, raw.data() + end, value);
      if (ec == std::errc() && ptr == raw.data() + end) return negative ? -value : value;
    }
    i = end;
  }
  throw Error(ErrorCode::kParseFailed, "no standalone integer in reply");
}

ProgressFeedback parse_feedback(std::string_view raw) {
  ProgressFeedback fb;
  fb.text = std::string(text::trim(raw));
  if (auto j = embedded_json(raw, '{', '}')) {
    fb.solved_goal_ids = ids_from_json(*j, "solved_goal_ids");
    fb.unsolved_goal_ids = ids_from_json(*j, "unsolved_goal_ids");
    if (j->contains("new_goals")) {
      const auto& goals = j->at("new_goals");
      if (!goals.is_array()) throw Error(ErrorCode::kParseFailed, "new_goals is not an array");
      for (const auto& g : goals) {
        if (!g.is_string()) throw Error(ErrorCode::kParseFailed, "new_goals holds a non-string");
        if (!text::trim(g.get<std::string>()).empty()) fb.new_goals.push_back(g.get<std::string>());
      }
    }
    if (j->contains("terminate")) {
      const auto& t = j->at("terminate");
      if (!t.is_boolean()) throw Error(ErrorCode::kParseFailed, "terminate is not a boolean");
      fb.terminate = t.get<bool>();
    }
    for (const char* key : {"text", "summary"}) {
      if (j->contains(key) && j->at(key).is_string()) {
        fb.text = j->at(key).get<std::string>();
        break;
      }
    }
    return fb;
  }
  bool matched = false;
  for (const auto& line : text::split_lines(raw)) {
    const auto l = text::trim(line);
    if (auto rest = after_prefix(l, "UNSOLVED:")) {
      fb.unsolved_goal_ids.merge(ids_from_text(*rest));
      matched = true;
    } else if (auto rest = after_prefix(l, "SOLVED:")) {
      fb.solved_goal_ids.merge(ids_from_text(*rest));
      matched = true;
    } else if (auto rest = after_prefix(l, "NEW:")) {
      if (!rest->empty()) fb.new_goals.emplace_back(*rest);
      matched = true;
    } else if (after_prefix(l, "DONE")) {
      fb.terminate = true;
      matched = true;
    }
  }
  if (!matched) throw Error(ErrorCode::kParseFailed, "feedback reply has neither JSON nor SOLVED/NEW/DONE lines");
  return fb;
}

std::vector<std::string> parse_subquery_list(std::string_view raw) {
  std::vector<std::string> out;
  if (auto j = embedded_json(raw, '[', ']')) {
    for (const auto& v : *j) {
      if (v.is_string() && !text::trim(v.get<std::string>()).empty()) out.push_back(strip_quotes(v.get<std::string>()));
    }
    if (!out.empty()) return out;
  }
  try {
    const auto items = parse_checklist(raw);
    for (const auto& g : items.goals()) {
      auto s = strip_quotes(g.description);
      if (!s.empty()) out.push_back(std::move(s));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyChecklist) throw;
  }
  if (out.empty()) throw Error(ErrorCode::kParseFailed, "no subquery list in reply");
  return out;
}

const std::vector<std::string>& PromptSet::names() {
  static const std::vector<std::string> n = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : default_templates()) v.push_back(k);
    return v;
  }();
  return n;
}

PromptSet PromptSet::defaults() {
  PromptSet p;
  p.templates_ = default_templates();
  return p;
}

PromptSet PromptSet::load_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kConfiguration, "prompt directory not found: " + dir.string());
  }
  auto p = defaults();
  for (const auto& name : names()) {
    const auto file = dir / (name + ".txt");
    if (!std::filesystem::exists(file)) continue;
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    if (!in) throw Error(ErrorCode::kConfiguration, "cannot read " + file.string());
    auto body = ss.str();
    while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
    p.templates_[name] = std::move(body);
  }
  return p;
}

const std::string& PromptSet::get(const std::string& name) const {
  const auto it = templates_.find(name);
  if (it == templates_.end()) throw Error(ErrorCode::kConfiguration, "no prompt template named " + name);
  return it->second;
}

void PromptSet::set(const std::string& name, std::string text) { templates_[name] = std::move(text); }

std::string fill_template(std::string_view tmpl, const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size());
  for (std::size_t i = 0; i < tmpl.size();) {
    if (tmpl[i] == '{') {
      const auto close = tmpl.find('}', i + 1);
      if (close != std::string_view::npos) {
        const auto it = values.find(std::string(tmpl.substr(i + 1, close - i - 1)));
        if (it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(tmpl[i++]);
  }
  return out;
}

RemoteModel::RemoteModel(LlmEndpointConfig config, PromptSet prompts, std::size_t memory_budget)
    : config_(std::move(config)), prompts_(std::move(prompts)), memory_budget_(memory_budget) {
  config_.validate();
}

std::string RemoteModel::id() const { return "remote:" + config_.model_name; }

std::string RemoteModel::ask(const std::string& name, const std::map<std::string, std::string>& values,
                             CallContext& ctx) const {
  return chat_complete(config_, prompts_.get("system"), fill_template(prompts_.get(name), values), ctx);
}

std::string RemoteModel::generate_checklist(std::string_view query, CallContext& ctx) const {
  return ask("checklist", {{"query", std::string(query)}}, ctx);
}

std::vector<std::string> RemoteModel::propose_subqueries(const HistoryContext& history, const Checklist& checklist,
                                                         const KnowledgeMemory& memory, int m_q,
                                                         CallContext& ctx) const {
  const auto reply = ask("subqueries",
                         {{"query", history.input_query},
                          {"checklist", render(checklist)},
                          {"history", render_history(history)},
                          {"memory", render_context(memory, memory_budget_)},
                          {"m_q", std::to_string(m_q)}},
                         ctx);
  try {
    auto list = parse_subquery_list(reply);
    if (static_cast<int>(list.size()) > m_q) list.resize(static_cast<std::size_t>(m_q));
    return list;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kParseFailed) throw;
    ctx.warn("subquery reply had no list");
    return {};
  }
}

Summary RemoteModel::summarize(std::string_view subquery, std::span<const Document> candidates,
                               CallContext& ctx) const {
  if (candidates.empty()) throw Error(ErrorCode::kNoDocuments, "nothing to summarize");
  const auto reply = ask("summarize", {{"subquery", std::string(subquery)}, {"documents", render_documents(candidates)}},
                         ctx);
  Summary s{candidates.front().doc_id, std::string(text::trim(reply))};
  if (auto j = embedded_json(reply, '{', '}')) {
    if (j->contains("snippet") && j->at("snippet").is_string()) s.snippet = j->at("snippet").get<std::string>();
    if (j->contains("doc")) {
      const auto& d = j->at("doc");
      int index = 0;
      if (d.is_number_integer()) {
        index = d.get<int>();
      } else if (d.is_string()) {
        try {
          index = parse_score(d.get<std::string>());
        } catch (const Error&) {
          index = 0;
        }
      }
      if (index >= 1 && index <= static_cast<int>(candidates.size())) {
        s.doc_id = candidates[static_cast<std::size_t>(index - 1)].doc_id;
        return s;
      }
    }
  }
  ctx.warn("summary reply did not name a result; using the first");
  return s;
}

std::string RemoteModel::generate_answer(std::string_view query, const KnowledgeMemory& memory,
                                         CallContext& ctx) const {
  return std::string(text::trim(
      ask("answer", {{"query", std::string(query)}, {"memory", render_context(memory, memory_budget_)}}, ctx)));
}

RawScore RemoteModel::exploration_reward(std::string_view subquery, const Checklist& checklist,
                                         const HistoryContext& history, CallContext& ctx) const {
  RawScore r;
  r.raw = ask("exploration_reward",
              {{"subquery", std::string(subquery)}, {"checklist", render(checklist)}, {"history", render_history(history)}},
              ctx);
  try {
    r.value = parse_score(r.raw);
  } catch (const Error&) {
  }
  return r;
}

RawScore RemoteModel::retrieval_reward(std::string_view subquery, std::string_view snippet, CallContext& ctx) const {
  RawScore r;
  r.raw = ask("retrieval_reward", {{"subquery", std::string(subquery)}, {"snippet", std::string(snippet)}}, ctx);
  try {
    r.value = parse_score(r.raw);
  } catch (const Error&) {
  }
  return r;
}

std::optional<ProgressFeedback> RemoteModel::progress_feedback(std::string_view subquery, const Checklist& checklist,
                                                               const HistoryContext& history,
                                                               const KnowledgeMemory& memory,
                                                               std::string_view candidate_snippet,
                                                               CallContext& ctx) const {
  const auto reply = ask("feedback",
                         {{"query", history.input_query},
                          {"checklist", render(checklist)},
                          {"memory", render_context(memory, memory_budget_)},
                          {"subquery", std::string(subquery)},
                          {"snippet", std::string(candidate_snippet)}},
                         ctx);
  try {
    return parse_feedback(reply);
  } catch (const Error&) {
    return std::nullopt;
  }
}

WebSearchClient::WebSearchClient(SearchEndpointConfig config) : config_(std::move(config)) { config_.validate(); }

std::vector<Document> WebSearchClient::search(std::string_view subquery, int top_k, CallContext& ctx) const {
  return web_search(config_, subquery, top_k, ctx);
}

}  // namespace hgmcts
