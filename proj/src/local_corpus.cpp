// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/local_corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "hgmcts/error.hpp"
#include "hgmcts/text.hpp"

namespace hgmcts {

LocalCorpus::LocalCorpus(std::vector<Document> docs) : docs_(std::move(docs)) {
  std::set<std::string> ids;
  doc_terms_.reserve(docs_.size());
  for (const auto& d : docs_) {
    if (!ids.insert(d.doc_id).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate doc_id in corpus: " + d.doc_id);
    }
    if (text::trim(d.content).empty()) {
      throw Error(ErrorCode::kInvalidArgument, "document " + d.doc_id + " has empty content");
    }
    std::vector<std::uint32_t> terms;
    for (auto& tok : text::word_tokens(d.title + " " + d.content)) {
      auto [it, inserted] = vocab_.try_emplace(std::move(tok), static_cast<std::uint32_t>(vocab_.size()));
      terms.push_back(it->second);
    }
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    doc_terms_.push_back(std::move(terms));
  }
}

LocalCorpus LocalCorpus::load_directory(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  if (ec) throw Error(ErrorCode::kLoad, "cannot list corpus directory " + dir.string());
  std::sort(files.begin(), files.end());
  std::vector<Document> docs;
  for (const auto& f : files) {
    std::ifstream in(f);
    try {
      docs.push_back(nlohmann::json::parse(in).get<Document>());
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::kLoad, "bad corpus document " + f.string() + ": " + ex.what());
    }
  }
  return LocalCorpus(std::move(docs));
}

LocalCorpus::QueryTerms LocalCorpus::query_terms(std::string_view query) const {
  auto tokens = text::word_tokens(query);
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  QueryTerms q;
  q.unique_count = tokens.size();
  for (const auto& t : tokens) {
    if (auto it = vocab_.find(t); it != vocab_.end()) q.known.push_back(it->second);
  }
  std::sort(q.known.begin(), q.known.end());
  return q;
}

double LocalCorpus::jaccard(const QueryTerms& q, std::size_t doc) const {
  const auto& d = doc_terms_[doc];
  std::size_t inter = 0;
  auto a = q.known.begin();
  auto b = d.begin();
  while (a != q.known.end() && b != d.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++inter;
      ++a;
      ++b;
    }
  }
  if (inter == 0) return 0.0;
  const std::size_t uni = q.unique_count + d.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<double> LocalCorpus::score_serial(std::string_view query) const {
  const auto q = query_terms(query);
  std::vector<double> scores(docs_.size());
  for (std::size_t i = 0; i < docs_.size(); ++i) scores[i] = jaccard(q, i);
  return scores;
}

std::vector<double> LocalCorpus::score_parallel(std::string_view query) const {
  const auto q = query_terms(query);
  const auto n = static_cast<std::int64_t>(docs_.size());
  std::vector<double> scores(docs_.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    scores[static_cast<std::size_t>(i)] = jaccard(q, static_cast<std::size_t>(i));
  }
  return scores;
}

std::vector<std::size_t> LocalCorpus::rank(std::span<const double> scores, int top_k) const {
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (scores[i] > 0.0) hits.push_back(i);
  auto better = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return docs_[a].doc_id < docs_[b].doc_id;
  };
  const auto k = std::min(hits.size(), static_cast<std::size_t>(std::max(top_k, 0)));
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(k), hits.end(), better);
  hits.resize(k);
  return hits;
}

std::vector<Document> LocalCorpus::search(std::string_view subquery, int top_k,
                                          CallContext& /*ctx*/) const {
  if (top_k < 1) throw Error(ErrorCode::kInvalidArgument, "top_k must be at least 1");
  const auto scores =
      docs_.size() >= kParallelThreshold ? score_parallel(subquery) : score_serial(subquery);
  std::vector<Document> out;
  for (std::size_t i : rank(scores, top_k)) out.push_back(docs_[i]);
  return out;
}

}  // namespace hgmcts
