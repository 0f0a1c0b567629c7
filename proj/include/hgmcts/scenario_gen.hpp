// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "hgmcts/evaluation.hpp"
#include "hgmcts/scripted.hpp"

namespace hgmcts {

/// Shape of a generated planted-document scenario.
///
/// Each goal has a difficulty d. Its subquery variants 0..d-1 reach bridge
/// documents (partially relevant, r_k = 1, never satisfy the goal); variant
/// d reaches the goal's gold document (r_k = 2). A guided policy walks the
/// chain: variant i+1 is proposed once variant i has put a snippet into
/// memory, so a goal of difficulty d takes d+1 simulations.
///
/// Without a checklist the policy proposes variant min(path depth, d) for
/// every goal, easiest first, and the m_q cut keeps it on the easy goals.
struct ScenarioShape {
  int goals = 5;
  int corpus_size = 25;
  int max_difficulty = 3;
};

/// Deterministic in `seed`. Verifies that every scripted subquery ranks
/// its intended document first in the generated corpus; throws
/// kInvalidArgument if the shape cannot be satisfied.
ScriptedScenario generate_scenario(std::uint64_t seed, const ScenarioShape& shape = {});

/// Writes scenario-NN.json files plus dataset.jsonl into `dir` and returns
/// the dataset items. Scenario i uses seed + i.
std::vector<eval::BenchmarkItem> write_suite(const std::filesystem::path& dir, int count, std::uint64_t seed,
                                             const ScenarioShape& shape = {});

}  // namespace hgmcts
