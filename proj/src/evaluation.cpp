// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "hgmcts/error.hpp"
#include "hgmcts/text.hpp"

namespace hgmcts::eval {
namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(std::move(tok));
  return out;
}

std::string strip_punct_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    if (std::ispunct(c)) continue;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::vector<std::string> answer_tokens(std::string_view s) { return split_ws(normalize_answer(s)); }

std::vector<std::string> rouge_tokens(std::string_view s) { return split_ws(strip_punct_lower(s)); }

double f_measure(double overlap, std::size_t pred_len, std::size_t ref_len) {
  if (overlap <= 0.0) return 0.0;
  const double p = overlap / static_cast<double>(pred_len);
  const double r = overlap / static_cast<double>(ref_len);
  return 2.0 * p * r / (p + r);
}

std::map<std::vector<std::string>, int> ngram_counts(const std::vector<std::string>& toks, int n) {
  std::map<std::vector<std::string>, int> out;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= toks.size(); ++i) {
    ++out[std::vector<std::string>(toks.begin() + static_cast<std::ptrdiff_t>(i),
                                   toks.begin() + static_cast<std::ptrdiff_t>(i) + n)];
  }
  return out;
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

std::string normalize_answer(std::string_view s) {
  std::vector<std::string> kept;
  for (auto& tok : split_ws(strip_punct_lower(s))) {
    if (tok == "a" || tok == "an" || tok == "the") continue;
    kept.push_back(std::move(tok));
  }
  return text::join(kept, " ");
}

int exact_match(std::string_view pred, std::span<const std::string> golds) {
  const auto p = normalize_answer(pred);
  return std::any_of(golds.begin(), golds.end(), [&](const std::string& g) { return normalize_answer(g) == p; })
             ? 1
             : 0;
}

int cover_exact_match(std::string_view pred, std::span<const std::string> golds) {
  const auto p = answer_tokens(pred);
  for (const auto& g : golds) {
    const auto gt = answer_tokens(g);
    if (gt.empty()) {
      if (p.empty()) return 1;
      continue;
    }
    if (std::search(p.begin(), p.end(), gt.begin(), gt.end()) != p.end()) return 1;
  }
  return 0;
}

double token_f1(std::string_view pred, std::span<const std::string> golds) {
  const auto p = answer_tokens(pred);
  double best = 0.0;
  for (const auto& g : golds) {
    const auto gt = answer_tokens(g);
    if (p.empty() || gt.empty()) {
      best = std::max(best, p.empty() && gt.empty() ? 1.0 : 0.0);
      continue;
    }
    std::map<std::string, int> counts;
    for (const auto& t : gt) ++counts[t];
    int common = 0;
    for (const auto& t : p) {
      if (auto it = counts.find(t); it != counts.end() && it->second > 0) {
        --it->second;
        ++common;
      }
    }
    best = std::max(best, f_measure(common, p.size(), gt.size()));
  }
  return best;
}

double rouge_n(std::string_view pred, std::string_view ref, int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "rouge n must be positive");
  const auto p = ngram_counts(rouge_tokens(pred), n);
  const auto r = ngram_counts(rouge_tokens(ref), n);
  std::size_t p_total = 0, r_total = 0, overlap = 0;
  for (const auto& [g, c] : p) p_total += static_cast<std::size_t>(c);
  for (const auto& [g, c] : r) {
    r_total += static_cast<std::size_t>(c);
    if (auto it = p.find(g); it != p.end()) overlap += static_cast<std::size_t>(std::min(c, it->second));
  }
  if (p_total == 0 || r_total == 0) return 0.0;
  return f_measure(static_cast<double>(overlap), p_total, r_total);
}

double rouge_l(std::string_view pred, std::string_view ref) {
  const auto p = rouge_tokens(pred);
  const auto r = rouge_tokens(ref);
  if (p.empty() || r.empty()) return 0.0;
  return f_measure(static_cast<double>(lcs_length(p, r)), p.size(), r.size());
}

std::string normalize_locator(std::string_view locator) {
  std::string_view s = text::trim(locator);
  if (auto pos = s.find("://"); pos != std::string_view::npos) s.remove_prefix(pos + 3);
  if (auto pos = s.find('#'); pos != std::string_view::npos) s = s.substr(0, pos);
  while (!s.empty() && s.back() == '/') s.remove_suffix(1);
  const auto slash = s.find('/');
  std::string out = text::to_lower(s.substr(0, slash));
  if (slash != std::string_view::npos) out.append(s.substr(slash));
  return out;
}

std::optional<double> page_recall(const std::set<std::string>& retrieved, const std::set<std::string>& gold) {
  std::set<std::string> g, r;
  for (const auto& x : gold) g.insert(normalize_locator(x));
  if (g.empty()) return std::nullopt;
  for (const auto& x : retrieved) r.insert(normalize_locator(x));
  const auto hits = std::count_if(g.begin(), g.end(), [&](const std::string& x) { return r.contains(x); });
  return static_cast<double>(hits) / static_cast<double>(g.size());
}

void to_json(nlohmann::json& j, const BenchmarkItem& item) {
  j = {{"id", item.id}, {"question", item.question}, {"answers", item.gold_answers}};
  if (!item.gold_pages.empty()) j["gold_pages"] = item.gold_pages;
  if (item.scenario) j["scenario"] = *item.scenario;
}

std::vector<BenchmarkItem> load_dataset(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::kLoad, "cannot open dataset " + file.string());
  std::vector<BenchmarkItem> items;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (text::trim(line).empty()) continue;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::kLoad, file.string() + ": line " + std::to_string(lineno) + ": " + why);
    };
    try {
      const auto j = nlohmann::json::parse(line);
      BenchmarkItem item;
      const auto& id = j.at("id");
      item.id = id.is_string() ? id.get<std::string>() : id.dump();
      j.at("question").get_to(item.question);
      j.at("answers").get_to(item.gold_answers);
      if (j.contains("gold_pages")) j.at("gold_pages").get_to(item.gold_pages);
      if (j.contains("scenario")) item.scenario = j.at("scenario").get<std::string>();
      if (text::trim(item.question).empty()) fail("empty question");
      if (item.gold_answers.empty()) fail("no gold answers");
      items.push_back(std::move(item));
    } catch (const nlohmann::json::exception& ex) {
      fail(ex.what());
    }
  }
  return items;
}

std::vector<BenchmarkItem> sample_items(const std::vector<BenchmarkItem>& items, std::size_t count,
                                        std::uint64_t seed) {
  if (count >= items.size()) return items;
  std::vector<BenchmarkItem> out;
  std::mt19937_64 rng(seed);
  std::sample(items.begin(), items.end(), std::back_inserter(out), count, rng);
  return out;
}

ItemMetrics score_item(const BenchmarkItem& item, const ItemOutcome& outcome) {
  ItemMetrics m{item.id, {}};
  const auto& golds = item.gold_answers;
  if (!golds.empty()) {
    m.values["em"] = exact_match(outcome.answer, golds);
    m.values["cem"] = cover_exact_match(outcome.answer, golds);
    m.values["f1"] = token_f1(outcome.answer, golds);
    double r1 = 0, r2 = 0, rl = 0;
    for (const auto& g : golds) {
      r1 = std::max(r1, rouge_n(outcome.answer, g, 1));
      r2 = std::max(r2, rouge_n(outcome.answer, g, 2));
      rl = std::max(rl, rouge_l(outcome.answer, g));
    }
    m.values["rouge_1"] = r1;
    m.values["rouge_2"] = r2;
    m.values["rouge_l"] = rl;
  }
  const std::set<std::string> gold_pages(item.gold_pages.begin(), item.gold_pages.end());
  if (auto pr = page_recall(outcome.retrieved_locators, gold_pages)) m.values["page_recall"] = *pr;
  return m;
}

MetricReport aggregate(const std::vector<BenchmarkItem>& items, const std::vector<ItemOutcome>& outcomes) {
  std::map<std::string, const ItemOutcome*> by_id;
  for (const auto& o : outcomes) by_id[o.id] = &o;
  MetricReport report;
  std::map<std::string, double> sums;
  for (const auto& item : items) {
    auto it = by_id.find(item.id);
    if (it == by_id.end()) throw Error(ErrorCode::kInvalidArgument, "no outcome for item " + item.id);
    auto m = score_item(item, *it->second);
    for (const auto& [k, v] : m.values) {
      sums[k] += v;
      ++report.counts[k];
    }
    report.items.push_back(std::move(m));
  }
  for (const auto& [k, total] : sums) report.means[k] = total / static_cast<double>(report.counts[k]);
  return report;
}

void to_json(nlohmann::json& j, const MetricReport& r) {
  auto items = nlohmann::json::array();
  for (const auto& m : r.items) items.push_back({{"id", m.id}, {"metrics", m.values}});
  j = {{"items", std::move(items)}, {"means", r.means}, {"counts", r.counts}};
}

std::string render_table(const MetricReport& r) {
  std::string out;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%-12s %8s %6s\n", "metric", "mean", "n");
  out += buf;
  for (const char* name : kMetricNames) {
    auto it = r.means.find(name);
    if (it == r.means.end()) {
      std::snprintf(buf, sizeof buf, "%-12s %8s %6d\n", name, "-", 0);
    } else {
      std::snprintf(buf, sizeof buf, "%-12s %8.4f %6zu\n", name, it->second, r.counts.at(name));
    }
    out += buf;
  }
  return out;
}

}  // namespace hgmcts::eval
