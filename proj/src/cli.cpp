// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <memory>

#include "hgmcts/config.hpp"
#include "hgmcts/local_corpus.hpp"
#include "hgmcts/orchestrator.hpp"
#include "hgmcts/remote.hpp"
#include "hgmcts/runner.hpp"
#include "hgmcts/scenario_gen.hpp"
#include "hgmcts/scripted.hpp"

namespace hgmcts::cli {
namespace {

/// Search settings a flag can override. Unset flags leave the config alone.
struct SearchFlags {
  int max_simulations = 0;
  int max_depth = 0;
  double uct_weight = 0;
  int subqueries = 0;
  int top_k = 0;
  std::uint64_t seed = 0;
  std::string reward_mode;
  bool no_checklist = false;
  std::vector<CLI::Option*> opts;

  /// `with_seed` false leaves --seed free for the caller.
  void add_to(CLI::App* app, bool with_seed = true) {
    opts = {app->add_option("--max-simulations", max_simulations, "Simulation budget"),
            app->add_option("--max-depth", max_depth, "Tree depth limit"),
            app->add_option("--uct-weight", uct_weight, "Exploration weight w"),
            app->add_option("--subqueries", subqueries, "Subqueries per expansion"),
            app->add_option("--top-k", top_k, "Documents per search"),
            with_seed ? app->add_option("--seed", seed, "Seed for stochastic backends") : nullptr,
            app->add_option("--reward-mode", reward_mode, "product or additive")
                ->check(CLI::IsMember({"product", "additive"})),
            app->add_flag("--no-checklist", no_checklist, "Disable checklist guidance")};
  }

  void apply(SearchConfig& c) const {
    if (opts[0]->count()) c.max_simulations = max_simulations;
    if (opts[1]->count()) c.max_depth = max_depth;
    if (opts[2]->count()) c.uct_weight = uct_weight;
    if (opts[3]->count()) c.subqueries_per_expansion = subqueries;
    if (opts[4]->count()) c.top_k = top_k;
    if (opts[5] && opts[5]->count()) c.seed = seed;
    if (opts[6]->count()) c.reward_mode = reward_mode == "additive" ? RewardMode::kAdditive : RewardMode::kProduct;
    if (no_checklist) c.checklist_guidance = false;
    c.validate();
  }
};

struct CommonFlags {
  std::string config;
  std::string backend = "scripted";
  std::string corpus;
  SearchFlags search;

  void add_to(CLI::App* app, bool with_backend, bool with_seed = true) {
    app->add_option("--config", config, "INI config file");
    if (with_backend) {
      app->add_option("--backend", backend, "scripted or remote")->check(CLI::IsMember({"scripted", "remote"}));
      app->add_option("--corpus", corpus, "Directory of JSON documents to search instead of the web");
    }
    search.add_to(app, with_seed);
  }

  AppConfig load() const {
    AppConfig c = config.empty() ? AppConfig{} : load_config(config);
    search.apply(c.search);
    return c;
  }
};

/// Remote policy/reward plus a search backend, built after secrets resolve.
struct RemoteStack {
  std::unique_ptr<RemoteModel> policy;
  std::unique_ptr<RemoteModel> reward;
  std::unique_ptr<SearchBackend> search;

  Backends backends() const { return {*policy, *reward, *search}; }
};

RemoteStack make_remote(AppConfig& c, const std::string& corpus_dir) {
  if (corpus_dir.empty() && c.web_search.base_url.empty()) {
    throw Error(ErrorCode::kConfiguration, "remote backend needs [web_search] base_url or --corpus");
  }
  resolve_llm_secrets(c);
  c.policy_llm.validate();
  c.reward_llm.validate();
  RemoteStack s;
  if (corpus_dir.empty()) {
    resolve_search_secret(c, false);
    s.search = std::make_unique<WebSearchClient>(c.web_search);
  } else {
    s.search = std::make_unique<LocalCorpus>(LocalCorpus::load_directory(corpus_dir));
  }
  const auto prompts = c.prompts_dir ? PromptSet::load_directory(*c.prompts_dir) : PromptSet::defaults();
  RequestLimiter::global().set_limit(c.max_concurrent_requests);
  s.policy = std::make_unique<RemoteModel>(c.policy_llm, prompts, c.search.memory_budget);
  s.reward = std::make_unique<RemoteModel>(c.reward_llm, prompts, c.search.memory_budget);
  return s;
}

void write_text(const std::filesystem::path& path, const std::string& body) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << body;
  if (!out) throw Error(ErrorCode::kTraceIo, "cannot write " + path.string());
}

std::filesystem::path suite_dataset(const std::filesystem::path& suite) {
  return std::filesystem::is_directory(suite) ? suite / "dataset.jsonl" : suite;
}

struct RunCmd {
  CommonFlags common;
  std::string query, scenario, trace_out, report_out;

  void add_to(CLI::App* app) {
    app->add_option("--query", query, "Question to research");
    app->add_option("--scenario", scenario, "Scripted scenario JSON file");
    app->add_option("--trace-out", trace_out, "Write the JSONL trace here");
    app->add_option("--report-out", report_out, "Write the JSON report here");
    common.add_to(app, true);
  }

  int operator()(std::ostream& out, std::ostream& err) const {
    auto config = common.load();
    std::optional<ScriptedBackends> scripted;
    std::optional<RemoteStack> remote;
    std::string q = query;
    if (common.backend == "scripted") {
      if (scenario.empty()) {
        err << "run: --scenario is required with the scripted backend\n";
        return kUsage;
      }
      scripted = ScriptedBackends::make(ScriptedScenario::load(scenario));
      if (q.empty()) q = scripted->scenario->query;
    } else {
      if (q.empty()) {
        err << "run: --query is required with the remote backend\n";
        return kUsage;
      }
      remote = make_remote(config, common.corpus);
    }
    const Backends backends = scripted ? Backends{*scripted->policy, *scripted->reward, *scripted->search}
                                       : remote->backends();
    std::unique_ptr<TraceSink> sink =
        trace_out.empty() ? std::make_unique<TraceSink>() : std::make_unique<TraceSink>(trace_out);
    try {
      const auto outcome = run_search(q, config.search, backends, *sink);
      out << "answer: " << outcome.answer << "\n"
          << "termination: " << to_string(outcome.termination_reason) << "\n"
          << "simulations: " << outcome.simulations_used << "\n";
      if (!report_out.empty()) write_text(report_out, to_report(outcome, trace_out).dump(2) + "\n");
      return kOk;
    } catch (const SearchAborted& e) {
      err << "search aborted after " << e.simulations_used() << " simulation(s): " << e.what() << "\n";
      if (!trace_out.empty()) err << "partial trace: " << trace_out << "\n";
      return exit_code_for(e.cause());
    }
  }
};

struct BenchCmd {
  CommonFlags common;
  std::string dataset, out_dir;
  int sample = 0;
  std::uint64_t sample_seed = 0;
  int parallel = 1;
  CLI::Option* sample_opt = nullptr;

  void add_to(CLI::App* app) {
    app->add_option("--dataset", dataset, "JSONL dataset")->required();
    app->add_option("--out-dir", out_dir, "Output directory")->required();
    sample_opt = app->add_option("--sample", sample, "Run a seeded random subset of this size")
                     ->check(CLI::PositiveNumber);
    app->add_option("--seed", sample_seed, "Seed for --sample (the search seed comes from [search] seed)");
    app->add_option("--parallel", parallel, "Concurrent searches")->check(CLI::PositiveNumber);
    common.add_to(app, true, false);
  }

  int operator()(std::ostream& out, std::ostream& err) const {
    auto config = common.load();
    auto items = eval::load_dataset(dataset);
    if (sample_opt->count()) items = eval::sample_items(items, static_cast<std::size_t>(sample), sample_seed);
    const auto base_dir = std::filesystem::path(dataset).parent_path();
    std::optional<RemoteStack> remote;
    ItemFn fn;
    if (common.backend == "scripted") {
      fn = [&](const eval::BenchmarkItem& item) { return run_scripted_item(item, base_dir, config.search); };
    } else {
      remote = make_remote(config, common.corpus);
      fn = [&](const eval::BenchmarkItem& item) { return run_item(item, config.search, remote->backends()); };
    }
    const auto runs = parallel == 1 ? run_items_serial(items, fn) : run_items_parallel(items, fn, parallel);
    const auto report = score_runs(items, runs);
    write_bench_outputs(out_dir, runs, report);
    out << eval::render_table(report);
    int code = kOk;
    for (const auto& r : runs) {
      if (!r.error) continue;
      err << "item " << r.id << " aborted: " << *r.error << "\n";
      code = std::max(code, static_cast<int>(exit_code_for(r.error_cause.value_or(ErrorCode::kAborted))));
    }
    return code;
  }
};

struct SweepCmd {
  CommonFlags common;
  std::vector<int> budgets;
  std::string suite, out_path;
  int parallel = 1;

  void add_to(CLI::App* app) {
    app->add_option("--simulations", budgets, "Comma-separated budgets, e.g. 5,10,20,40")
        ->required()
        ->delimiter(',')
        ->allow_extra_args(false);
    app->add_option("--scenario-suite", suite, "Suite directory (with dataset.jsonl) or dataset file")->required();
    app->add_option("--out", out_path, "CSV output path (stdout when omitted)");
    app->add_option("--parallel", parallel, "Concurrent searches")->check(CLI::PositiveNumber);
    common.add_to(app, false);
  }

  int operator()(std::ostream& out, std::ostream& err) const {
    if (budgets.empty() || std::any_of(budgets.begin(), budgets.end(), [](int b) { return b < 1; })) {
      err << "sweep: --simulations needs one or more positive budgets\n";
      return kUsage;
    }
    const auto config = common.load();
    const auto dataset = suite_dataset(suite);
    const auto items = eval::load_dataset(dataset);
    const auto csv = sweep_csv(sweep(items, dataset.parent_path(), config.search, budgets, parallel));
    if (out_path.empty()) {
      out << csv;
    } else {
      write_text(out_path, csv);
      out << "wrote " << budgets.size() << " row(s) to " << out_path << "\n";
    }
    return kOk;
  }
};

struct ReplayCmd {
  std::string a, b;

  void add_to(CLI::App* app) {
    app->add_option("--trace-a", a, "First trace")->required();
    app->add_option("--trace-b", b, "Second trace")->required();
  }

  int operator()(std::ostream& out, std::ostream& /*err*/) const {
    const auto ta = read_trace(a);
    const auto tb = read_trace(b);
    const auto r = replay_verify(ta, tb);
    if (r.equal) {
      out << "traces match (" << ta.size() << " events)\n";
      return kOk;
    }
    out << "traces diverge at seq " << r.first_divergence_seq.value_or(0) << ": " << r.detail << "\n";
    return kReplayDiverged;
  }
};

struct GenerateCmd {
  std::string out_dir;
  int count = 10;
  std::uint64_t seed = 100;
  ScenarioShape shape;

  void add_to(CLI::App* app) {
    app->add_option("--out-dir", out_dir, "Where to write the suite")->required();
    app->add_option("--count", count, "Number of scenarios")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "Seed of the first scenario");
    app->add_option("--goals", shape.goals, "Sub-goals per scenario")->check(CLI::PositiveNumber);
    app->add_option("--corpus-size", shape.corpus_size, "Documents per scenario")->check(CLI::PositiveNumber);
    app->add_option("--max-difficulty", shape.max_difficulty, "Longest bridge chain")->check(CLI::NonNegativeNumber);
  }

  int operator()(std::ostream& out, std::ostream& /*err*/) const {
    const auto items = write_suite(out_dir, count, seed, shape);
    out << "wrote " << items.size() << " scenario(s) and dataset.jsonl to " << out_dir << "\n";
    return kOk;
  }
};

}  // namespace

ExitCode exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfiguration:
    case ErrorCode::kInvalidArgument:
      return kUsage;
    case ErrorCode::kTraceIo:
    case ErrorCode::kLoad:
      return kIo;
    default:
      return kBackendAbort;
  }
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checklist-guided tree search over retrieval backends", "hgmcts"};
  app.require_subcommand(1);
  RunCmd run;
  BenchCmd bench;
  SweepCmd sweep_cmd;
  ReplayCmd replay;
  GenerateCmd generate;
  auto* run_app = app.add_subcommand("run", "Research one question");
  auto* bench_app = app.add_subcommand("bench", "Run and score a dataset");
  auto* sweep_app = app.add_subcommand("sweep", "Score a scripted suite at several budgets");
  auto* replay_app = app.add_subcommand("replay", "Compare two traces");
  auto* generate_app = app.add_subcommand("generate", "Write a planted-document scenario suite");
  run.add_to(run_app);
  bench.add_to(bench_app);
  sweep_cmd.add_to(sweep_app);
  replay.add_to(replay_app);
  generate.add_to(generate_app);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kUsage;
  }

  try {
    if (run_app->parsed()) return run(out, err);
    if (bench_app->parsed()) return bench(out, err);
    if (sweep_app->parsed()) return sweep_cmd(out, err);
    if (replay_app->parsed()) return replay(out, err);
    return generate(out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    const auto code = exit_code_for(e.code());
    if (code == kUsage) err << "see 'hgmcts <command> --help'\n";
    return code;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  }
}

}  // namespace hgmcts::cli
