// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/evaluation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>

#include "generators.hpp"
#include "hgmcts/error.hpp"

namespace hgmcts::eval {
namespace {

using Golds = std::vector<std::string>;

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize_answer("The Cat!"), "cat");
  EXPECT_EQ(normalize_answer(""), "");
  EXPECT_EQ(normalize_answer("an  apple"), "apple");
  EXPECT_EQ(normalize_answer("  A, B;  the C. "), "b c");
}

TEST(ExactMatch, Examples) {
  EXPECT_EQ(exact_match("Paris", Golds{"paris"}), 1);
  EXPECT_EQ(exact_match("in Paris", Golds{"Paris"}), 0);
  EXPECT_EQ(exact_match("The Eiffel Tower", Golds{"Eiffel Tower"}), 1);
  EXPECT_EQ(exact_match("x", Golds{"y", "X."}), 1);
  EXPECT_EQ(exact_match("x", Golds{}), 0);
}

TEST(CoverExactMatch, Examples) {
  EXPECT_EQ(cover_exact_match("the answer is paris", Golds{"Paris"}), 1);
  EXPECT_EQ(cover_exact_match("parisian", Golds{"Paris"}), 0);
  EXPECT_EQ(cover_exact_match("The Eiffel Tower", Golds{"Eiffel Tower"}), 1);
  EXPECT_EQ(cover_exact_match("new york city", Golds{"york new"}), 0);
}

TEST(TokenF1, Examples) {
  // "the" is an article, so pred tokens are {cat, sat}: P = R = 1.
  EXPECT_NEAR(token_f1("the cat sat", Golds{"cat sat"}), 1.0, 1e-12);
  // {cat, sat} vs {cat, ran}: P = R = 1/2.
  EXPECT_NEAR(token_f1("the cat sat", Golds{"cat ran"}), 0.5, 1e-12);
  // P = 1/4, R = 1: 2 * 0.25 / 1.25.
  EXPECT_NEAR(token_f1("barack obama was president", Golds{"obama"}), 0.4, 1e-12);
  EXPECT_EQ(token_f1("same words here", Golds{"same words here"}), 1.0);
  EXPECT_EQ(token_f1("alpha beta", Golds{"gamma delta"}), 0.0);
  EXPECT_EQ(token_f1("the", Golds{"a"}), 1.0);
  EXPECT_EQ(token_f1("the", Golds{"cat"}), 0.0);
  EXPECT_NEAR(token_f1("cat cat", Golds{"cat"}), 2.0 * 0.5 / 1.5, 1e-12);
}

TEST(Rouge, Examples) {
  EXPECT_NEAR(rouge_n("a b c", "a c d", 1), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(rouge_n("a b c", "a c d", 2), 0.0, 1e-12);
  EXPECT_NEAR(rouge_l("a b c", "a c d"), 2.0 / 3.0, 1e-12);

  EXPECT_NEAR(rouge_n("the quick brown fox", "the quick red fox", 1), 0.75, 1e-12);
  EXPECT_NEAR(rouge_n("the quick brown fox", "the quick red fox", 2), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(rouge_l("the quick brown fox", "the quick red fox"), 0.75, 1e-12);

  EXPECT_NEAR(rouge_n("police killed the gunman", "the gunman police killed", 1), 1.0, 1e-12);
  EXPECT_NEAR(rouge_n("police killed the gunman", "the gunman police killed", 2), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(rouge_l("police killed the gunman", "the gunman police killed"), 0.5, 1e-12);

  for (int n : {1, 2}) EXPECT_EQ(rouge_n("Same text.", "same TEXT", n), 1.0);
  EXPECT_EQ(rouge_l("Same text.", "same TEXT"), 1.0);
  EXPECT_EQ(rouge_n("", "x", 1), 0.0);
  EXPECT_EQ(rouge_n("x", "", 1), 0.0);
  EXPECT_EQ(rouge_l("", ""), 0.0);
  EXPECT_THROW(rouge_n("a", "a", 0), Error);
}

TEST(PageRecall, Examples) {
  const std::set<std::string> gold{"https://Example.com/a/", "https://example.com/b", "https://example.com/c",
                                   "https://example.com/d", "https://example.com/e"};
  EXPECT_EQ(page_recall(gold, gold), 1.0);
  EXPECT_EQ(page_recall({"https://other.org/"}, gold), 0.0);
  EXPECT_NEAR(*page_recall({"http://example.com/a#intro", "example.com/b/", "HTTPS://EXAMPLE.COM/c", "x"}, gold), 0.6,
              1e-12);
  EXPECT_FALSE(page_recall({"x"}, {}).has_value());
  EXPECT_EQ(normalize_locator("HTTPS://Example.COM/Path/#frag"), "example.com/Path");
}

std::filesystem::path write_lines(const std::string& name, const std::vector<std::string>& lines) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream out(p);
  for (const auto& l : lines) out << l << "\n";
  return p;
}

TEST(LoadDataset, ValidAndMalformed) {
  const auto ok = write_lines("hgmcts_ds_ok.jsonl",
                              {R"({"id":"1","question":"q1","answers":["a"]})", "",
                               R"({"id":2,"question":"q2","answers":["b","c"],"gold_pages":["u"],"scenario":"s.json"})"});
  const auto items = load_dataset(ok);
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[1].id, "2");
  EXPECT_EQ(items[1].gold_pages, Golds{"u"});
  EXPECT_EQ(items[1].scenario, "s.json");

  const auto bad = write_lines("hgmcts_ds_bad.jsonl", {R"({"id":"1","question":"q1","answers":["a"]})", "{oops"});
  try {
    load_dataset(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLoad);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  const auto no_answers = write_lines("hgmcts_ds_noans.jsonl", {R"({"id":"1","question":"q1","answers":[]})"});
  EXPECT_THROW(load_dataset(no_answers), Error);
}

TEST(SampleItems, SeededAndOrdered) {
  std::vector<BenchmarkItem> items;
  for (int i = 0; i < 20; ++i) items.push_back({std::to_string(i), "q", {"a"}, {}, std::nullopt});
  const auto a = sample_items(items, 5, 7);
  const auto b = sample_items(items, 5, 7);
  ASSERT_EQ(a.size(), 5u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].id, b[i].id);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end(),
                             [](const auto& x, const auto& y) { return std::stoi(x.id) < std::stoi(y.id); }));
  EXPECT_EQ(sample_items(items, 50, 7).size(), 20u);
}

TEST(Aggregate, MeansOverPresentValues) {
  std::vector<BenchmarkItem> items{{"a", "q", {"yes"}, {"p1"}, std::nullopt}, {"b", "q", {"yes"}, {}, std::nullopt}};
  std::vector<ItemOutcome> outs{{"a", "yes", {"p1"}}, {"b", "no", {}}};
  const auto r = aggregate(items, outs);
  EXPECT_DOUBLE_EQ(r.means.at("em"), 0.5);
  EXPECT_EQ(r.counts.at("page_recall"), 1u);
  EXPECT_DOUBLE_EQ(r.means.at("page_recall"), 1.0);
  const auto table = render_table(r);
  EXPECT_NE(table.find("em"), std::string::npos);
  EXPECT_NE(table.find("0.5000"), std::string::npos);
  EXPECT_THROW(aggregate(items, {outs[0]}), Error);
  const nlohmann::json j = r;
  EXPECT_EQ(j["items"].size(), 2u);
}

std::string strip_case_punct(const std::string& s) {
  std::string out;
  for (unsigned char c : s)
    if (!std::ispunct(c)) out.push_back(static_cast<char>(std::tolower(c)));
  return out;
}

TEST(MetricsProperty, ImplicationsRangesAndInvariance) {
  testing::Gen g(1234);
  const std::vector<std::string> vocab{"the", "a", "Paris", "city", "of", "light", "river,", "Seine.", "an", "42"};
  auto sentence = [&](int max) {
    std::string s;
    for (int i = g.uniform(0, max); i > 0; --i) s += (s.empty() ? "" : " ") + g.pick(vocab);
    return s;
  };
  for (int i = 0; i < 3000; ++i) {
    const auto p = sentence(6);
    Golds golds;
    for (int k = g.uniform(1, 3); k > 0; --k) golds.push_back(g.chance(0.3) ? p : sentence(4));
    const int em = exact_match(p, golds);
    const int cem = cover_exact_match(p, golds);
    const double f1 = token_f1(p, golds);
    if (em == 1) {
      EXPECT_EQ(cem, 1) << p;
      EXPECT_EQ(f1, 1.0) << p;
    }
    for (double v : {static_cast<double>(em), static_cast<double>(cem), f1, rouge_n(p, golds[0], 1),
                     rouge_n(p, golds[0], 2), rouge_l(p, golds[0])}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_EQ(token_f1(normalize_answer(p), golds), f1);
    EXPECT_EQ(exact_match(normalize_answer(p), golds), em);
    EXPECT_EQ(normalize_answer(normalize_answer(p)), normalize_answer(p));
    EXPECT_EQ(rouge_l(strip_case_punct(p), golds[0]), rouge_l(p, golds[0]));
    EXPECT_EQ(rouge_n(strip_case_punct(p), golds[0], 2), rouge_n(p, golds[0], 2));
    if (!normalize_answer(p).empty()) {
      const Golds self{p};
      EXPECT_EQ(exact_match(p, self), 1);
      EXPECT_EQ(cover_exact_match(p, self), 1);
      EXPECT_EQ(token_f1(p, self), 1.0);
      EXPECT_EQ(rouge_n(p, p, 1), 1.0);
      EXPECT_EQ(rouge_l(p, p), 1.0);
    }
  }
}

TEST(MetricsProperty, PageRecallMonotone) {
  testing::Gen g(55);
  for (int i = 0; i < 300; ++i) {
    std::set<std::string> gold, got;
    for (int k = g.uniform(1, 6); k > 0; --k) gold.insert("https://h/" + std::to_string(g.uniform(0, 9)));
    double prev = 0.0;
    for (int k = 0; k < 10; ++k) {
      got.insert("h/" + std::to_string(g.uniform(0, 12)));
      const double r = *page_recall(got, gold);
      EXPECT_GE(r, prev);
      prev = r;
    }
  }
}

}  // namespace
}  // namespace hgmcts::eval
