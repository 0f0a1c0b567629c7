// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference vs OpenMP kernels: corpus scoring and whole-item runs.

#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

#include "hgmcts/local_corpus.hpp"
#include "hgmcts/runner.hpp"
#include "hgmcts/scenario_gen.hpp"

namespace {

using hgmcts::LocalCorpus;

const LocalCorpus& corpus(std::size_t n) {
  static std::map<std::size_t, LocalCorpus> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::mt19937_64 rng(n);
  std::vector<hgmcts::Document> docs;
  docs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string content;
    for (int w = 0; w < 60; ++w) content += "w" + std::to_string(rng() % 5000) + " ";
    docs.push_back({"d" + std::to_string(i), "", "corpus://bench/" + std::to_string(i), content});
  }
  return cache.emplace(n, LocalCorpus(std::move(docs))).first->second;
}

constexpr const char* kQuery = "w12 w345 w999 w4000 w17 w2500";

void BM_ScoreSerial(benchmark::State& state) {
  const auto& c = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(c.score_serial(kQuery));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScoreParallel(benchmark::State& state) {
  const auto& c = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(c.score_parallel(kQuery));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_ScoreSerial)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->UseRealTime();
BENCHMARK(BM_ScoreParallel)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->UseRealTime();

struct Suite {
  std::filesystem::path dir;
  std::vector<hgmcts::eval::BenchmarkItem> items;
};

const Suite& suite() {
  static const Suite s = [] {
    const auto dir = std::filesystem::temp_directory_path() / "hgmcts-bench-suite";
    std::filesystem::remove_all(dir);
    return Suite{dir, hgmcts::write_suite(dir, 32, 1000, {8, 60, 3})};
  }();
  return s;
}

hgmcts::ItemRun run_one(const hgmcts::eval::BenchmarkItem& item) {
  return hgmcts::run_scripted_item(item, suite().dir, hgmcts::SearchConfig{});
}

void BM_ItemsSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(hgmcts::run_items_serial(suite().items, run_one));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(suite().items.size()));
}

void BM_ItemsParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hgmcts::run_items_parallel(suite().items, run_one, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(suite().items.size()));
}

BENCHMARK(BM_ItemsSerial)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ItemsParallel)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
