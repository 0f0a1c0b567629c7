// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hgmcts/backends.hpp"

namespace hgmcts {

/// In-memory search over a fixed document set. Relevance is the Jaccard
/// overlap of casefolded unigram sets; documents with zero overlap are
/// never returned and ties go to the lexicographically smaller doc_id.
///
/// Scoring is a data-parallel loop over documents. score_parallel is the
/// OpenMP kernel; score_serial is the reference it is tested against.
class LocalCorpus final : public SearchBackend {
 public:
  /// Corpora at least this large are scored with the parallel kernel.
  static constexpr std::size_t kParallelThreshold = 4096;

  /// Throws kInvalidArgument on duplicate doc ids or empty content.
  explicit LocalCorpus(std::vector<Document> docs);

  /// Every *.json file in `dir` holding {doc_id, title, locator, content}.
  static LocalCorpus load_directory(const std::filesystem::path& dir);

  std::string id() const override { return "local-corpus"; }
  std::vector<Document> search(std::string_view subquery, int top_k,
                               CallContext& ctx) const override;

  const std::vector<Document>& documents() const noexcept { return docs_; }

  std::vector<double> score_serial(std::string_view query) const;
  std::vector<double> score_parallel(std::string_view query) const;

  /// Indices of the best `top_k` positive scores, score-descending then
  /// doc_id-ascending.
  std::vector<std::size_t> rank(std::span<const double> scores, int top_k) const;

 private:
  struct QueryTerms {
    std::vector<std::uint32_t> known;  // sorted ids present in the vocabulary
    std::size_t unique_count = 0;      // including tokens unknown to the corpus
  };
  QueryTerms query_terms(std::string_view query) const;
  double jaccard(const QueryTerms& q, std::size_t doc) const;

  std::vector<Document> docs_;
  std::unordered_map<std::string, std::uint32_t> vocab_;
  std::vector<std::vector<std::uint32_t>> doc_terms_;  // sorted unique term ids
};

}  // namespace hgmcts
