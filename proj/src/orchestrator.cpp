// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include "hgmcts/orchestrator.hpp"

#include <cmath>
#include <set>

#include "hgmcts/text.hpp"

namespace hgmcts {

void SearchConfig::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::kConfiguration, what); };
  if (max_simulations < 1) bad("max_simulations must be positive");
  if (max_depth < 1) bad("max_depth must be positive");
  if (!std::isfinite(uct_weight) || uct_weight < 0.0) bad("uct_weight must be a non-negative number");
  if (subqueries_per_expansion < 1) bad("subqueries_per_expansion must be positive");
  if (top_k < 1) bad("top_k must be positive");
  if (memory_budget < 1) bad("memory_budget must be positive");
}

std::string_view to_string(RewardMode m) {
  return m == RewardMode::kProduct ? "product" : "additive";
}

void to_json(nlohmann::json& j, const SearchConfig& c) {
  j = {{"max_simulations", c.max_simulations},
       {"max_depth", c.max_depth},
       {"uct_weight", c.uct_weight},
       {"subqueries_per_expansion", c.subqueries_per_expansion},
       {"top_k", c.top_k},
       {"memory_budget", c.memory_budget},
       {"seed", c.seed},
       {"reward_mode", to_string(c.reward_mode)},
       {"checklist_guidance", c.checklist_guidance},
       {"policy_checklist_rewrite", c.policy_checklist_rewrite}};
}

double combine_reward(int exploration, int retrieval, RewardMode mode) {
  if (exploration < 0 || exploration > 1) {
    throw Error(ErrorCode::kInvalidArgument, "exploration reward out of range: " + std::to_string(exploration));
  }
  if (retrieval < 0 || retrieval > 2) {
    throw Error(ErrorCode::kInvalidArgument, "retrieval reward out of range: " + std::to_string(retrieval));
  }
  if (mode == RewardMode::kAdditive) return static_cast<double>(exploration + retrieval);
  return static_cast<double>(exploration * retrieval);
}

std::string_view to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::kAllGoalsSolved: return "all_goals_solved";
    case TerminationReason::kBudgetExhausted: return "budget_exhausted";
    case TerminationReason::kSearchExhausted: return "search_exhausted";
  }
  return "unknown";
}

nlohmann::json to_report(const SearchOutcome& outcome, const std::string& trace_locator) {
  return {{"answer", outcome.answer},
          {"termination_reason", to_string(outcome.termination_reason)},
          {"simulations_used", outcome.simulations_used},
          {"checklist", outcome.checklist},
          {"memory", outcome.memory},
          {"tree", outcome.tree},
          {"trace", trace_locator}};
}

Search::Search(std::string query, SearchConfig config, Backends backends, TraceSink& trace)
    : query_(std::move(query)),
      config_(config),
      backends_(backends),
      trace_(trace),
      tree_(query_, config.max_depth) {
  config_.validate();
}

const Checklist& Search::visible_checklist() const noexcept {
  return guided() ? checklist_ : empty_checklist_;
}

void Search::warn(std::string_view message) {
  trace_.emit(TracePhase::kWarning, {{"message", message}});
}

void Search::initialize() {
  if (initialized_) return;
  initialized_ = true;
  trace_.emit(TracePhase::kHeader, {{"version", kArtifactVersion},
                                    {"query", query_},
                                    {"config", config_},
                                    {"backends",
                                     {{"policy", backends_.policy.id()},
                                      {"reward", backends_.reward.id()},
                                      {"search", backends_.search.id()}}}});
  if (!guided()) {
    trace_.emit(TracePhase::kChecklistInit, {{"guidance", false}, {"checklist", checklist_}});
    return;
  }
  CallContext ctx(&trace_);
  const auto raw = backends_.policy.generate_checklist(query_, ctx);
  bool fallback = false;
  try {
    checklist_ = parse_checklist(raw);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyChecklist) throw;
    warn("checklist had no list items; using the query as the only goal");
    checklist_ = Checklist::from_descriptions({query_});
    fallback = true;
  }
  trace_.emit(TracePhase::kChecklistInit,
              {{"guidance", true}, {"fallback", fallback}, {"checklist", checklist_}});
}

std::vector<std::string> Search::usable_subqueries(const std::vector<std::string>& raw) const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& q : raw) {
    if (out.size() >= static_cast<std::size_t>(config_.subqueries_per_expansion)) break;
    auto key = text::normalize_key(q);
    if (key.empty() || !seen.insert(key).second) continue;
    out.emplace_back(text::trim(q));
  }
  return out;
}

std::vector<ChildResult> Search::expand_and_evaluate(NodeId node) {
  if (!initialized_) initialize();
  if (!tree_.is_expandable(node)) {
    throw Error(ErrorCode::kInvalidArgument, "node " + std::to_string(node) + " is not expandable");
  }
  tree_.mark_expanded(node);

  CallContext ctx(&trace_);
  HistoryContext history{query_, last_feedback_, tree_.path_subqueries(node)};
  const auto raw =
      backends_.policy.propose_subqueries(history, visible_checklist(), memory_, config_.subqueries_per_expansion, ctx);
  const auto subqueries = usable_subqueries(raw);
  trace_.emit(TracePhase::kSubqueryProposed,
              {{"node", node}, {"proposed", raw.size()}, {"subqueries", subqueries}});
  if (subqueries.empty()) {
    warn("no usable subqueries for node " + std::to_string(node));
    throw Error(ErrorCode::kExpansionFailed, "no usable subqueries for node " + std::to_string(node));
  }

  std::vector<ChildResult> results;
  for (const auto& subquery : subqueries) {
    if (simulations_used_ >= config_.max_simulations) break;
    results.push_back(evaluate_child(node, subquery, history, ctx));
    const auto& fb = results.back().reward.feedback;
    if (guided() && checklist_.is_complete()) break;
    if (guided() && fb.terminate) {
      warn("terminate signalled with unsolved goals; ending this expansion only");
      break;
    }
  }
  return results;
}

ChildResult Search::evaluate_child(NodeId node, const std::string& subquery, const HistoryContext& history,
                                   CallContext& ctx) {
  const NodeId child = tree_.add_child(node, subquery);

  const auto docs = backends_.search.search(subquery, config_.top_k, ctx);
  {
    std::vector<std::string> ids, locators;
    for (const auto& d : docs) {
      ids.push_back(d.doc_id);
      locators.push_back(d.locator);
    }
    trace_.emit(TracePhase::kRetrieval,
                {{"node", child}, {"subquery", subquery}, {"doc_ids", ids}, {"locators", locators}});
  }

  std::optional<Summary> summary;
  const Document* chosen = nullptr;
  if (!docs.empty()) {
    summary = backends_.policy.summarize(subquery, docs, ctx);
    for (const auto& d : docs)
      if (d.doc_id == summary->doc_id) chosen = &d;
    if (chosen == nullptr) {
      warn("summary named unknown document " + summary->doc_id + "; attributing to " + docs.front().doc_id);
      chosen = &docs.front();
      summary->doc_id = chosen->doc_id;
    }
    trace_.emit(TracePhase::kSummarization,
                {{"node", child}, {"doc_id", summary->doc_id}, {"snippet", summary->snippet}});
  }

  RewardBundle bundle;
  const auto rq = clamp_exploration(backends_.reward.exploration_reward(subquery, visible_checklist(), history, ctx));
  if (rq.warning) warn(*rq.warning);
  bundle.exploration = rq.value;
  if (summary) {
    const auto rk = clamp_retrieval(backends_.reward.retrieval_reward(subquery, summary->snippet, ctx));
    if (rk.warning) warn(*rk.warning);
    bundle.retrieval = rk.value;
  }
  bundle.combined = combine_reward(bundle.exploration, bundle.retrieval, config_.reward_mode);
  trace_.emit(TracePhase::kReward, {{"node", child},
                                    {"exploration", bundle.exploration},
                                    {"retrieval", bundle.retrieval},
                                    {"combined", bundle.combined}});

  EvaluationRecord record;
  if (summary) {
    record.doc_id = summary->doc_id;
    KnowledgeSnippet candidate{0,
                               summary->snippet,
                               chosen->doc_id,
                               chosen->locator,
                               subquery,
                               child,
                               bundle.retrieval,
                               simulations_used_};
    const bool duplicate_text = text::trim(summary->snippet).empty();
    if (auto id = memory_.admit(candidate)) {
      record.snippet_id = id;
      trace_.emit(TracePhase::kMemoryAdmit,
                  {{"node", child}, {"snippet_id", *id}, {"doc_id", chosen->doc_id}, {"locator", chosen->locator}});
    } else {
      std::string reason = bundle.retrieval < kAdmissionThreshold ? "low_retrieval_reward"
                           : duplicate_text                       ? "empty_snippet"
                                                                  : "duplicate_source";
      trace_.emit(TracePhase::kMemoryReject, {{"node", child}, {"doc_id", chosen->doc_id}, {"reason", reason}});
    }
  }

  auto fb = backends_.reward.progress_feedback(subquery, visible_checklist(), history, memory_,
                                               summary ? std::string_view(summary->snippet) : std::string_view(),
                                               ctx);
  if (!fb) {
    warn("progress feedback could not be parsed; using empty feedback");
    fb.emplace();
  }
  if (guided()) {
    auto effect = checklist_.apply_feedback(*fb);
    for (const auto& w : effect.warnings) warn(w);
    if (config_.policy_checklist_rewrite) {
      if (auto rewritten = backends_.policy.rewrite_checklist(checklist_, *fb, ctx)) {
        auto extra = checklist_.apply_feedback(feedback_from_rewrite(checklist_, *rewritten));
        for (const auto& w : extra.warnings) warn(w);
        effect.newly_solved.insert(effect.newly_solved.end(), extra.newly_solved.begin(), extra.newly_solved.end());
        effect.appended.insert(effect.appended.end(), extra.appended.begin(), extra.appended.end());
      }
    }
    trace_.emit(TracePhase::kFeedbackApplied, {{"node", child},
                                               {"applied", true},
                                               {"text", fb->text},
                                               {"terminate", fb->terminate},
                                               {"newly_solved", effect.newly_solved},
                                               {"appended", effect.appended},
                                               {"revision", checklist_.revision()}});
  } else {
    trace_.emit(TracePhase::kFeedbackApplied,
                {{"node", child}, {"applied", false}, {"text", fb->text}, {"terminate", fb->terminate}});
  }
  bundle.feedback = *fb;
  last_feedback_ = *fb;

  tree_.backpropagate(child, bundle.combined);
  trace_.emit(TracePhase::kBackprop,
              {{"node", child}, {"reward", bundle.combined}, {"path", tree_.ancestry(child)}});
  record.reward = bundle;
  tree_.attach_evaluation(child, record);
  ++simulations_used_;
  return {child, std::move(bundle)};
}

SearchOutcome Search::run() {
  initialize();
  bool exhausted = false;
  while (simulations_used_ < config_.max_simulations && !(guided() && checklist_.is_complete())) {
    NodeId leaf = 0;
    try {
      leaf = select(tree_, config_.uct_weight);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSearchExhausted) throw;
      exhausted = true;
      break;
    }
    const auto& n = tree_.node(leaf);
    trace_.emit(TracePhase::kSelection, {{"node", leaf}, {"depth", n.depth}, {"visits", n.visits}, {"value", n.value}});
    try {
      expand_and_evaluate(leaf);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kExpansionFailed) throw;
    }
  }

  SearchOutcome out{"", {}, tree_, checklist_, TerminationReason::kBudgetExhausted, simulations_used_,
                    trace_.path()};
  if (guided() && checklist_.is_complete()) {
    out.termination_reason = TerminationReason::kAllGoalsSolved;
  } else if (exhausted) {
    out.termination_reason = TerminationReason::kSearchExhausted;
  }
  trace_.emit(TracePhase::kTerminate,
              {{"reason", to_string(out.termination_reason)}, {"simulations_used", simulations_used_}});

  if (memory_.empty()) warn("answer generated from an empty knowledge memory");
  CallContext ctx(&trace_);
  out.answer = backends_.policy.generate_answer(query_, memory_, ctx);
  trace_.emit(TracePhase::kAnswer, {{"answer", out.answer}, {"memory_size", memory_.size()}});
  out.memory = memory_;
  out.checklist = checklist_;
  out.tree = tree_;
  return out;
}

SearchOutcome run_search(std::string_view query, const SearchConfig& config, const Backends& backends,
                         TraceSink& trace) {
  if (text::trim(query).empty()) throw Error(ErrorCode::kInvalidArgument, "query must not be empty");
  config.validate();
  std::optional<Search> search;
  try {
    search.emplace(std::string(query), config, backends, trace);
    return search->run();
  } catch (const SearchAborted&) {
    throw;
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kBackendUnavailable:
      case ErrorCode::kConfiguration:
      case ErrorCode::kTraceIo:
        throw SearchAborted(e.code(), e.what(), trace.lines(), search ? search->simulations_used() : 0);
      default:
        throw;
    }
  }
}

}  // namespace hgmcts
