// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/trace.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "hgmcts/error.hpp"

namespace hgmcts {
namespace {

constexpr std::array<std::pair<TracePhase, std::string_view>, 15> kPhaseNames{{
    {TracePhase::kHeader, "header"},
    {TracePhase::kChecklistInit, "checklist_init"},
    {TracePhase::kSelection, "selection"},
    {TracePhase::kSubqueryProposed, "subquery_proposed"},
    {TracePhase::kRetrieval, "retrieval"},
    {TracePhase::kSummarization, "summarization"},
    {TracePhase::kReward, "reward"},
    {TracePhase::kFeedbackApplied, "feedback_applied"},
    {TracePhase::kBackprop, "backprop"},
    {TracePhase::kMemoryAdmit, "memory_admit"},
    {TracePhase::kMemoryReject, "memory_reject"},
    {TracePhase::kTerminate, "terminate"},
    {TracePhase::kAnswer, "answer"},
    {TracePhase::kWarning, "warning"},
    {TracePhase::kTransport, "transport"},
}};

nlohmann::json masked(const std::string& line) {
  auto j = nlohmann::json::parse(line);
  j.erase("elapsed_us");
  return j;
}

}  // namespace

std::string_view to_string(TracePhase p) {
  for (const auto& [phase, name] : kPhaseNames)
    if (phase == p) return name;
  return "unknown";
}

std::optional<TracePhase> phase_from_string(std::string_view s) {
  for (const auto& [phase, name] : kPhaseNames)
    if (name == s) return phase;
  return std::nullopt;
}

std::string to_line(const TraceEvent& e) {
  nlohmann::json j{{"seq", e.seq},
                   {"phase", to_string(e.phase)},
                   {"elapsed_us", e.elapsed.count()},
                   {"payload", e.payload}};
  return j.dump();
}

TraceEvent parse_line(std::string_view line) {
  try {
    auto j = nlohmann::json::parse(line);
    TraceEvent e;
    e.seq = j.at("seq").get<std::uint64_t>();
    auto phase = phase_from_string(j.at("phase").get<std::string>());
    if (!phase) throw Error(ErrorCode::kTraceIo, "unknown trace phase");
    e.phase = *phase;
    e.elapsed = std::chrono::microseconds(j.value("elapsed_us", std::int64_t{0}));
    e.payload = j.value("payload", nlohmann::json::object());
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kTraceIo, std::string("malformed trace line: ") + ex.what());
  }
}

TraceSink::TraceSink() : start_(std::chrono::steady_clock::now()) {}

TraceSink::TraceSink(const std::filesystem::path& file)
    : start_(std::chrono::steady_clock::now()), path_(file), out_(file, std::ios::trunc) {
  if (!out_) throw Error(ErrorCode::kTraceIo, "cannot open trace file " + file.string());
}

void TraceSink::emit(TracePhase phase, nlohmann::json payload) {
  TraceEvent e;
  e.seq = next_seq_++;
  e.phase = phase;
  e.payload = std::move(payload);
  e.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start_);
  lines_.push_back(to_line(e));
  phases_.push_back(phase);
  if (path_) {
    out_ << lines_.back() << '\n';
    out_.flush();
    if (!out_) throw Error(ErrorCode::kTraceIo, "write failed on trace file " + path_->string());
  }
}

std::size_t TraceSink::count(TracePhase phase) const {
  return static_cast<std::size_t>(std::count(phases_.begin(), phases_.end(), phase));
}

ReplayResult replay_verify(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  ReplayResult r;
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i) {
    nlohmann::json ja, jb;
    try {
      ja = masked(a[i]);
      jb = masked(b[i]);
    } catch (const nlohmann::json::exception&) {
      r.first_divergence_seq = i;
      r.detail = "unparseable line " + std::to_string(i);
      return r;
    }
    if (ja != jb) {
      r.first_divergence_seq = ja.value("seq", static_cast<std::uint64_t>(i));
      r.detail = "event differs: " + ja.dump() + " vs " + jb.dump();
      return r;
    }
  }
  if (a.size() != b.size()) {
    r.first_divergence_seq = common;
    r.detail = "trace lengths differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size());
    return r;
  }
  r.equal = true;
  return r;
}

std::vector<std::string> read_trace(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::kTraceIo, "cannot read trace file " + file.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(std::move(line));
  }
  if (in.bad()) throw Error(ErrorCode::kTraceIo, "read failed on trace file " + file.string());
  return lines;
}

}  // namespace hgmcts
