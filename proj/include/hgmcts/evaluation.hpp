// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace hgmcts::eval {

/// Lowercase, drop ASCII punctuation, drop a/an/the, collapse whitespace.
std::string normalize_answer(std::string_view s);

int exact_match(std::string_view pred, std::span<const std::string> golds);
/// 1 iff some normalized gold appears as a contiguous token run of the
/// normalized prediction.
int cover_exact_match(std::string_view pred, std::span<const std::string> golds);
/// Best token-multiset F1 over the golds, on normalized answers.
double token_f1(std::string_view pred, std::span<const std::string> golds);

/// F-measure on clipped n-gram overlap. Tokens are lowercased with
/// punctuation removed; articles are kept. 0 when either side is empty.
double rouge_n(std::string_view pred, std::string_view ref, int n);
/// F-measure from the longest common token subsequence.
double rouge_l(std::string_view pred, std::string_view ref);

/// Scheme, fragment and trailing slashes removed; host lowercased.
std::string normalize_locator(std::string_view locator);
/// |retrieved ∩ gold| / |gold| on normalized locators; nullopt for an empty
/// gold set.
std::optional<double> page_recall(const std::set<std::string>& retrieved, const std::set<std::string>& gold);

struct BenchmarkItem {
  std::string id;
  std::string question;
  std::vector<std::string> gold_answers;
  std::vector<std::string> gold_pages;
  /// Scripted scenario file, relative to the dataset file.
  std::optional<std::string> scenario;
};

void to_json(nlohmann::json& j, const BenchmarkItem& item);

/// One JSON object per line: {id, question, answers, gold_pages?, scenario?}.
/// Blank lines are skipped. Throws kLoad naming the 1-based line.
std::vector<BenchmarkItem> load_dataset(const std::filesystem::path& file);

/// `count` items chosen uniformly with a seeded generator, in file order.
/// Returns everything when count >= items.size().
std::vector<BenchmarkItem> sample_items(const std::vector<BenchmarkItem>& items, std::size_t count,
                                        std::uint64_t seed);

struct ItemOutcome {
  std::string id;
  std::string answer;
  std::set<std::string> retrieved_locators;
};

inline constexpr const char* kMetricNames[] = {"em", "cem", "f1", "rouge_1", "rouge_2", "rouge_l", "page_recall"};

struct ItemMetrics {
  std::string id;
  std::map<std::string, double> values;  // absent metrics are missing keys
};

struct MetricReport {
  std::vector<ItemMetrics> items;
  std::map<std::string, double> means;
  std::map<std::string, std::size_t> counts;
};

ItemMetrics score_item(const BenchmarkItem& item, const ItemOutcome& outcome);

/// Pairs items and outcomes by id. Throws kInvalidArgument when an item
/// has no outcome.
MetricReport aggregate(const std::vector<BenchmarkItem>& items, const std::vector<ItemOutcome>& outcomes);

void to_json(nlohmann::json& j, const MetricReport& r);
/// Aligned plain-text table of corpus means.
std::string render_table(const MetricReport& r);

}  // namespace hgmcts::eval
