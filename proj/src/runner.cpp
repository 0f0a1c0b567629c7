// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/runner.hpp"

#include <cctype>
#include <cstdio>
#include <exception>
#include <fstream>

#include "hgmcts/error.hpp"
#include "hgmcts/scripted.hpp"

namespace hgmcts {
namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
  if (!out) throw Error(ErrorCode::kTraceIo, "cannot write " + path.string());
}

}  // namespace

std::string safe_id(std::string_view id) {
  std::string out;
  for (char c : id) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  if (out.empty() || out == "." || out == "..") out = "item" + out;
  return out;
}

std::string trace_locator(std::string_view id) { return "traces/" + safe_id(id) + ".jsonl"; }

ItemRun run_item(const eval::BenchmarkItem& item, const SearchConfig& config, const Backends& backends) {
  ItemRun run;
  run.id = item.id;
  run.outcome.id = item.id;
  TraceSink sink;
  try {
    const auto outcome = run_search(item.question, config, backends, sink);
    run.report = to_report(outcome, trace_locator(item.id));
    run.outcome.answer = outcome.answer;
    run.outcome.retrieved_locators = outcome.memory.locators();
    run.trace = sink.lines();
  } catch (const SearchAborted& e) {
    run.error = e.what();
    run.error_cause = e.cause();
    run.trace = e.partial_trace();
    run.report = {{"id", item.id}, {"error", e.what()}, {"cause", to_string(e.cause())},
                  {"simulations_used", e.simulations_used()}, {"trace", trace_locator(item.id)}};
  }
  return run;
}

ItemRun run_scripted_item(const eval::BenchmarkItem& item, const std::filesystem::path& base_dir,
                          const SearchConfig& config) {
  if (!item.scenario) throw Error(ErrorCode::kLoad, "item " + item.id + " names no scenario file");
  const auto b = ScriptedBackends::make(ScriptedScenario::load(base_dir / *item.scenario));
  return run_item(item, config, Backends{*b.policy, *b.reward, *b.search});
}

std::vector<ItemRun> run_items_serial(const std::vector<eval::BenchmarkItem>& items, const ItemFn& fn) {
  std::vector<ItemRun> runs;
  runs.reserve(items.size());
  for (const auto& item : items) runs.push_back(fn(item));
  return runs;
}

std::vector<ItemRun> run_items_parallel(const std::vector<eval::BenchmarkItem>& items, const ItemFn& fn,
                                        int threads) {
  if (threads < 1) throw Error(ErrorCode::kInvalidArgument, "parallelism must be >= 1");
  std::vector<ItemRun> runs(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  const auto n = static_cast<std::ptrdiff_t>(items.size());
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      runs[static_cast<std::size_t>(i)] = fn(items[static_cast<std::size_t>(i)]);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return runs;
}

eval::MetricReport score_runs(const std::vector<eval::BenchmarkItem>& items, const std::vector<ItemRun>& runs) {
  std::vector<eval::ItemOutcome> outcomes;
  outcomes.reserve(runs.size());
  for (const auto& r : runs) outcomes.push_back(r.outcome);
  return eval::aggregate(items, outcomes);
}

void write_bench_outputs(const std::filesystem::path& out_dir, const std::vector<ItemRun>& runs,
                         const eval::MetricReport& report) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "items", ec);
  std::filesystem::create_directories(out_dir / "traces", ec);
  if (ec) throw Error(ErrorCode::kTraceIo, "cannot create " + out_dir.string() + ": " + ec.message());
  for (const auto& r : runs) {
    write_file(out_dir / "items" / (safe_id(r.id) + ".json"), r.report.dump(2) + "\n");
    std::string trace;
    for (const auto& line : r.trace) trace += line + "\n";
    write_file(out_dir / trace_locator(r.id), trace);
  }
  write_file(out_dir / "metrics.json", nlohmann::json(report).dump(2) + "\n");
  write_file(out_dir / "summary.txt", eval::render_table(report));
}

std::vector<SweepRow> sweep(const std::vector<eval::BenchmarkItem>& items, const std::filesystem::path& base_dir,
                            const SearchConfig& config, const std::vector<int>& budgets, int threads) {
  if (budgets.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep needs at least one budget");
  std::vector<SweepRow> rows;
  for (int budget : budgets) {
    if (budget < 1) throw Error(ErrorCode::kInvalidArgument, "budgets must be positive");
    auto c = config;
    c.max_simulations = budget;
    const auto runs = run_items_parallel(
        items, [&](const eval::BenchmarkItem& item) { return run_scripted_item(item, base_dir, c); }, threads);
    const auto report = score_runs(items, runs);
    auto mean = [&](const char* m) { return report.means.contains(m) ? report.means.at(m) : 0.0; };
    rows.push_back({budget, mean("page_recall"), mean("em"), mean("f1"), items.size()});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "budget,recall_mean,em_mean,f1_mean,items\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.6f,%zu\n", r.budget, r.recall_mean, r.em_mean, r.f1_mean, r.items);
    out += buf;
  }
  return out;
}

}  // namespace hgmcts
