// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace hgmcts {

inline constexpr std::string_view kArtifactVersion = "hgmcts/1.0.0";

enum class TracePhase {
  kHeader,
  kChecklistInit,
  kSelection,
  kSubqueryProposed,
  kRetrieval,
  kSummarization,
  kReward,
  kFeedbackApplied,
  kBackprop,
  kMemoryAdmit,
  kMemoryReject,
  kTerminate,
  kAnswer,
  kWarning,
  kTransport,
};

std::string_view to_string(TracePhase p);
std::optional<TracePhase> phase_from_string(std::string_view s);

struct TraceEvent {
  std::uint64_t seq = 0;
  TracePhase phase = TracePhase::kWarning;
  nlohmann::json payload = nlohmann::json::object();
  std::chrono::microseconds elapsed{0};
};

/// One JSONL line: {"elapsed_us":..,"payload":{..},"phase":"..","seq":n}.
std::string to_line(const TraceEvent& e);
/// Throws kTraceIo on malformed lines.
TraceEvent parse_line(std::string_view line);

/// Append-only event log for one search. Keeps every line in memory and,
/// when constructed with a path, mirrors each line to that file as it is
/// emitted so a partial trace survives an aborted search.
class TraceSink {
 public:
  TraceSink();
  explicit TraceSink(const std::filesystem::path& file);

  TraceSink(const TraceSink&) = delete;
  TraceSink& operator=(const TraceSink&) = delete;

  /// Throws kTraceIo if the file write fails.
  void emit(TracePhase phase, nlohmann::json payload);

  const std::vector<std::string>& lines() const noexcept { return lines_; }
  const std::optional<std::filesystem::path>& path() const noexcept { return path_; }
  std::size_t count(TracePhase phase) const;

 private:
  std::chrono::steady_clock::time_point start_;
  std::uint64_t next_seq_ = 0;
  std::vector<std::string> lines_;
  std::vector<TracePhase> phases_;
  std::optional<std::filesystem::path> path_;
  std::ofstream out_;
};

struct ReplayResult {
  bool equal = false;
  std::optional<std::uint64_t> first_divergence_seq;
  std::string detail;
};

/// Line-by-line comparison with `elapsed_us` masked out.
ReplayResult replay_verify(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// Throws kTraceIo when the file cannot be read.
std::vector<std::string> read_trace(const std::filesystem::path& file);

}  // namespace hgmcts
