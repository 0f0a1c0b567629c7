// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/scenario_gen.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "hgmcts/error.hpp"
#include "hgmcts/local_corpus.hpp"
#include "hgmcts/text.hpp"

namespace hgmcts {
namespace {

constexpr int kWordsPerDoc = 8;
constexpr int kQueryWords = 4;

class WordSource {
 public:
  explicit WordSource(std::uint64_t seed) : rng_(seed) {}

  std::string fresh() {
    static constexpr const char* kOnsets[] = {"b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z"};
    static constexpr const char* kVowels[] = {"a", "e", "i", "o", "u"};
    for (;;) {
      std::string w;
      for (int s = 0; s < 3; ++s) {
        w += kOnsets[pick(std::size(kOnsets))];
        w += kVowels[pick(std::size(kVowels))];
      }
      if (used_.insert(w).second) return w;
    }
  }

  std::vector<std::string> fresh(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(fresh());
    return out;
  }

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::set<std::string> used_;
};

struct Planned {
  std::string title;
  std::string topic;  // empty for fillers
  std::vector<std::string> words;
  int goal = 0;      // 0 for fillers
  int variant = -1;  // -1 for fillers
  bool gold = false;
  std::string doc_id;
};

std::string subquery_for(const Planned& p) {
  std::vector<std::string> parts{p.topic};
  parts.insert(parts.end(), p.words.begin(), p.words.begin() + kQueryWords);
  return text::join(parts, " ");
}

std::string content_for(const Planned& p) {
  std::vector<std::string> parts;
  if (!p.topic.empty()) parts.push_back(p.topic);
  parts.insert(parts.end(), p.words.begin(), p.words.end());
  return text::join(parts, " ") + ".";
}

}  // namespace

ScriptedScenario generate_scenario(std::uint64_t seed, const ScenarioShape& shape) {
  if (shape.goals < 1 || shape.max_difficulty < 0) {
    throw Error(ErrorCode::kInvalidArgument, "scenario shape needs at least one goal");
  }
  WordSource words(seed);
  std::vector<int> difficulty(static_cast<std::size_t>(shape.goals));
  for (auto& d : difficulty) d = static_cast<int>(words.pick(static_cast<std::size_t>(shape.max_difficulty) + 1));

  std::vector<Planned> planned;
  std::vector<std::string> entities, facts;
  for (int g = 1; g <= shape.goals; ++g) {
    const auto topic = words.fresh();
    entities.push_back(topic);
    const int d = difficulty[static_cast<std::size_t>(g - 1)];
    for (int v = 0; v <= d; ++v) {
      Planned p{words.fresh(), topic, words.fresh(kWordsPerDoc), g, v, v == d, ""};
      if (p.gold) facts.push_back(p.words.back());
      planned.push_back(std::move(p));
    }
  }
  if (static_cast<int>(planned.size()) > shape.corpus_size) {
    throw Error(ErrorCode::kInvalidArgument, "corpus too small for the drawn difficulties");
  }
  while (static_cast<int>(planned.size()) < shape.corpus_size) {
    planned.push_back(Planned{words.fresh(), "", words.fresh(kWordsPerDoc + 1), 0, -1, false, ""});
  }
  std::shuffle(planned.begin(), planned.end(), words.rng());

  char buf[64];
  ScriptedScenario s;
  for (std::size_t i = 0; i < planned.size(); ++i) {
    std::snprintf(buf, sizeof buf, "doc-%02zu", i);
    planned[i].doc_id = buf;
    std::snprintf(buf, sizeof buf, "corpus://scenario-%llu/doc-%02zu", static_cast<unsigned long long>(seed), i);
    const auto content = content_for(planned[i]);
    s.corpus.push_back(Document{planned[i].doc_id, planned[i].title, buf, content});
    s.summary_script[planned[i].doc_id] = content;
  }

  std::vector<std::string> checklist_lines;
  std::vector<std::vector<std::string>> variants(static_cast<std::size_t>(shape.goals));
  for (int g = 1; g <= shape.goals; ++g) {
    auto& list = variants[static_cast<std::size_t>(g - 1)];
    list.resize(static_cast<std::size_t>(difficulty[static_cast<std::size_t>(g - 1)]) + 1);
    for (const auto& p : planned) {
      if (p.goal != g) continue;
      const auto q = subquery_for(p);
      list[static_cast<std::size_t>(p.variant)] = q;
      ScriptedReward r;
      r.exploration = 1;
      r.retrieval["*"] = p.gold ? 2 : 1;
      s.reward_script[text::normalize_key(q)] = r;
      if (p.gold) {
        s.gold_doc_ids.insert(p.doc_id);
        s.goal_docs[g] = {p.doc_id};
      }
    }
    s.subquery_script["goal:" + std::to_string(g)] = list;
    checklist_lines.push_back(std::to_string(g) + ". Find the recorded detail for " +
                              entities[static_cast<std::size_t>(g - 1)]);
  }

  // Unguided lists: every goal, easiest first, at the variant for the depth.
  std::vector<int> order(static_cast<std::size_t>(shape.goals));
  for (int g = 0; g < shape.goals; ++g) order[static_cast<std::size_t>(g)] = g;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return difficulty[static_cast<std::size_t>(a)] < difficulty[static_cast<std::size_t>(b)];
  });
  for (int t = 0; t <= shape.max_difficulty; ++t) {
    std::vector<std::string> list;
    for (int g : order) {
      const auto& v = variants[static_cast<std::size_t>(g)];
      list.push_back(v[std::min(static_cast<std::size_t>(t), v.size() - 1)]);
    }
    s.subquery_script[t == shape.max_difficulty ? std::string("*") : "depth:" + std::to_string(t)] = list;
  }

  s.query = "Collect the recorded detail for each of " + text::join(entities, ", ");
  s.checklist_text = text::join(checklist_lines, "\n");
  s.answer_script = text::join(facts, " ");

  const LocalCorpus index(s.corpus);
  for (const auto& p : planned) {
    if (p.goal == 0) continue;
    const auto q = subquery_for(p);
    const auto top = index.rank(index.score_serial(q), 1);
    if (top.empty() || s.corpus[top.front()].doc_id != p.doc_id) {
      throw Error(ErrorCode::kInvalidArgument, "generated subquery does not rank its document first: " + q);
    }
  }
  return s;
}

std::vector<eval::BenchmarkItem> write_suite(const std::filesystem::path& dir, int count, std::uint64_t seed,
                                             const ScenarioShape& shape) {
  std::filesystem::create_directories(dir);
  std::vector<eval::BenchmarkItem> items;
  std::ofstream dataset(dir / "dataset.jsonl");
  if (!dataset) throw Error(ErrorCode::kLoad, "cannot write " + (dir / "dataset.jsonl").string());
  char buf[64];
  for (int i = 0; i < count; ++i) {
    const auto s = generate_scenario(seed + static_cast<std::uint64_t>(i), shape);
    std::snprintf(buf, sizeof buf, "scenario-%02d.json", i);
    const std::string file = buf;
    s.save(dir / file);
    eval::BenchmarkItem item;
    std::snprintf(buf, sizeof buf, "s%02d", i);
    item.id = buf;
    item.question = s.query;
    item.gold_answers = {s.answer_script};
    const auto gold = s.gold_locators();
    item.gold_pages.assign(gold.begin(), gold.end());
    item.scenario = file;
    dataset << nlohmann::json(item).dump() << '\n';
    items.push_back(std::move(item));
  }
  if (!dataset) throw Error(ErrorCode::kLoad, "cannot write " + (dir / "dataset.jsonl").string());
  return items;
}

}  // namespace hgmcts
