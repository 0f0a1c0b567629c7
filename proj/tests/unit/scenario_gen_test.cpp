// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/scenario_gen.hpp"

#include <gtest/gtest.h>

#include <filesystem>

#include "hgmcts/checklist.hpp"
#include "hgmcts/error.hpp"

namespace hgmcts {
namespace {

TEST(GenerateScenario, DeterministicInSeed) {
  const auto a = generate_scenario(42);
  const auto b = generate_scenario(42);
  const auto c = generate_scenario(43);
  EXPECT_EQ(nlohmann::json(a).dump(), nlohmann::json(b).dump());
  EXPECT_NE(nlohmann::json(a).dump(), nlohmann::json(c).dump());
}

TEST(GenerateScenario, ShapeHolds) {
  const ScenarioShape shape{4, 30, 2};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = generate_scenario(seed, shape);
    EXPECT_EQ(s.corpus.size(), 30u);
    EXPECT_EQ(parse_checklist(s.checklist_text).goals().size(), 4u);
    EXPECT_EQ(s.goal_docs.size(), 4u);
    EXPECT_EQ(s.gold_doc_ids.size(), 4u);
    EXPECT_EQ(s.gold_locators().size(), 4u);
    for (int g = 1; g <= 4; ++g) {
      const auto& v = s.subquery_script.at("goal:" + std::to_string(g));
      EXPECT_GE(v.size(), 1u);
      EXPECT_LE(v.size(), 3u);
    }
    EXPECT_TRUE(s.subquery_script.contains("*"));
    EXPECT_TRUE(s.subquery_script.contains("depth:0"));
    EXPECT_TRUE(s.subquery_script.contains("depth:1"));
  }
}

TEST(GenerateScenario, RejectsImpossibleShape) {
  EXPECT_THROW(generate_scenario(1, ScenarioShape{0, 10, 1}), Error);
  EXPECT_THROW(generate_scenario(1, ScenarioShape{5, 3, 3}), Error);
}

TEST(WriteSuite, FilesAndDataset) {
  const auto dir = std::filesystem::temp_directory_path() / "hgmcts_suite_test";
  std::filesystem::remove_all(dir);
  const auto items = write_suite(dir, 3, 9);
  ASSERT_EQ(items.size(), 3u);
  EXPECT_EQ(items[0].id, "s00");
  EXPECT_TRUE(std::filesystem::exists(dir / "scenario-02.json"));
  const auto loaded = eval::load_dataset(dir / "dataset.jsonl");
  ASSERT_EQ(loaded.size(), 3u);
  EXPECT_EQ(loaded[1].scenario, "scenario-01.json");
  const auto s = ScriptedScenario::load(dir / "scenario-01.json");
  EXPECT_EQ(nlohmann::json(s).dump(), nlohmann::json(generate_scenario(10)).dump());
  EXPECT_EQ(loaded[1].gold_answers, std::vector<std::string>{s.answer_script});
}

}  // namespace
}  // namespace hgmcts
