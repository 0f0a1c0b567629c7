// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/backends.hpp"

#include <algorithm>

namespace hgmcts {

void CallContext::warn(std::string_view message) {
  if (sink_) sink_->emit(TracePhase::kWarning, {{"message", message}});
}

void CallContext::transport(nlohmann::json payload) {
  if (sink_) sink_->emit(TracePhase::kTransport, std::move(payload));
}

ClampedScore clamp_exploration(const RawScore& s) {
  if (!s.value) return {0, "unparseable exploration reward, defaulting to 0"};
  if (*s.value == 0 || *s.value == 1) return {*s.value, std::nullopt};
  return {0, "exploration reward " + std::to_string(*s.value) + " outside {0,1}, clamped to 0"};
}

ClampedScore clamp_retrieval(const RawScore& s) {
  if (!s.value) return {0, "unparseable retrieval reward, defaulting to 0"};
  const int v = std::clamp(*s.value, 0, 2);
  if (v == *s.value) return {v, std::nullopt};
  return {v, "retrieval reward " + std::to_string(*s.value) + " outside {0,1,2}, clamped to " +
                 std::to_string(v)};
}

std::string render_history(const HistoryContext& history) {
  std::string out = "Input query: " + history.input_query + "\n";
  if (history.path_subqueries.empty()) {
    out += "Previous subqueries: (none)\n";
  } else {
    out += "Previous subqueries:\n";
    for (std::size_t i = 0; i < history.path_subqueries.size(); ++i) {
      out += "  q" + std::to_string(i + 1) + ": " + history.path_subqueries[i] + "\n";
    }
  }
  if (history.last_feedback && !history.last_feedback->text.empty()) {
    out += "Last progress feedback: " + history.last_feedback->text + "\n";
  }
  return out;
}

}  // namespace hgmcts
