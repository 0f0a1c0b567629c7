// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgmcts/evaluation.hpp"
#include "hgmcts/orchestrator.hpp"

namespace hgmcts {

/// Result of one benchmark item. `error` is set when the search aborted;
/// the item then scores as an empty answer with nothing retrieved.
struct ItemRun {
  std::string id;
  nlohmann::json report;
  std::vector<std::string> trace;
  eval::ItemOutcome outcome;
  std::optional<std::string> error;
  std::optional<ErrorCode> error_cause;
};

using ItemFn = std::function<ItemRun(const eval::BenchmarkItem&)>;

/// File-name-safe form of an item id.
std::string safe_id(std::string_view id);

/// The report's trace locator for an item: traces/<safe id>.jsonl.
std::string trace_locator(std::string_view id);

/// Runs `query` and packages the outcome. Search aborts become ItemRun
/// errors; other exceptions propagate.
ItemRun run_item(const eval::BenchmarkItem& item, const SearchConfig& config, const Backends& backends);

/// Loads item.scenario (relative to `base_dir`) and runs it with scripted
/// backends. Throws kLoad when the item has no scenario.
ItemRun run_scripted_item(const eval::BenchmarkItem& item, const std::filesystem::path& base_dir,
                          const SearchConfig& config);

/// Reference loop: items in order on the calling thread.
std::vector<ItemRun> run_items_serial(const std::vector<eval::BenchmarkItem>& items, const ItemFn& fn);
/// OpenMP loop over items with `threads` workers. Results come back in item
/// order; any exception from `fn` is rethrown after the loop.
std::vector<ItemRun> run_items_parallel(const std::vector<eval::BenchmarkItem>& items, const ItemFn& fn,
                                        int threads);

eval::MetricReport score_runs(const std::vector<eval::BenchmarkItem>& items, const std::vector<ItemRun>& runs);

/// Writes items/<id>.json, traces/<id>.jsonl, metrics.json and summary.txt
/// under `out_dir`. Called from one thread only.
void write_bench_outputs(const std::filesystem::path& out_dir, const std::vector<ItemRun>& runs,
                         const eval::MetricReport& report);

struct SweepRow {
  int budget = 0;
  double recall_mean = 0;
  double em_mean = 0;
  double f1_mean = 0;
  std::size_t items = 0;
};

/// Runs the scripted suite once per budget (max_simulations = budget).
/// Throws kInvalidArgument for an empty or non-positive budget list.
std::vector<SweepRow> sweep(const std::vector<eval::BenchmarkItem>& items, const std::filesystem::path& base_dir,
                            const SearchConfig& config, const std::vector<int>& budgets, int threads);

/// Header budget,recall_mean,em_mean,f1_mean,items then one row per budget.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace hgmcts
