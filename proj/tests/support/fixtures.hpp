// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "hgmcts/orchestrator.hpp"
#include "hgmcts/scripted.hpp"

namespace hgmcts::testing {

/// Three goals, one document each, all reachable from the root.
inline ScriptedScenario tiny_scenario() {
  ScriptedScenario s;
  s.query = "What connects alpha, beta and gamma?";
  s.checklist_text = "Plan:\n1. Find alpha\n2. Find beta\n3. Find gamma\n";
  s.corpus = {
      {"da", "", "https://Example.org/alpha", "alpha fact one"},
      {"db", "", "https://example.org/beta/", "beta fact two"},
      {"dc", "", "https://example.org/gamma#top", "gamma fact three"},
      {"dn", "", "https://example.org/noise", "unrelated filler words"},
  };
  s.subquery_script["*"] = {"alpha", "beta", "gamma"};
  s.summary_script = {{"da", "alpha is one"}, {"db", "beta is two"}, {"dc", "gamma is three"}};
  for (const char* q : {"alpha", "beta", "gamma"}) {
    ScriptedReward r;
    r.exploration = 1;
    r.retrieval["*"] = 2;
    s.reward_script[q] = r;
  }
  s.answer_script = "one two three";
  s.gold_doc_ids = {"da", "db", "dc"};
  s.goal_docs = {{1, {"da"}}, {2, {"db"}}, {3, {"dc"}}};
  return s;
}

struct RunResult {
  SearchOutcome outcome;
  std::vector<std::string> trace;
};

inline RunResult run_scripted(const ScriptedScenario& scenario, const SearchConfig& config) {
  auto b = ScriptedBackends::make(scenario);
  TraceSink sink;
  auto outcome = run_search(scenario.query, config, Backends{*b.policy, *b.reward, *b.search}, sink);
  return {std::move(outcome), sink.lines()};
}

}  // namespace hgmcts::testing
