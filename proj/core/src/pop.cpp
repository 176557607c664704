#include "bpe/pop.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

#include "bpe/errors.hpp"

namespace bpe {

PlanStructure::PlanStructure(const SasInstance& inst) : inst_(&inst), occ_action_{-1, -1} {
  order_.emplace_back(kInitOcc, kGoalOcc);
}

Value PlanStructure::pre_at(int occ, int var) const {
  switch (const int a = action_of(occ); occ) {
    case kInitOcc:
      return kUndefined;
    case kGoalOcc:
      return inst_->goal()[static_cast<std::size_t>(var)];
    default:
      return inst_->action(static_cast<std::size_t>(a)).pre()[static_cast<std::size_t>(var)];
  }
}

Value PlanStructure::eff_at(int occ, int var) const {
  switch (const int a = action_of(occ); occ) {
    case kInitOcc:
      return inst_->init()[static_cast<std::size_t>(var)];
    case kGoalOcc:
      return kUndefined;
    default:
      return inst_->action(static_cast<std::size_t>(a)).eff()[static_cast<std::size_t>(var)];
  }
}

std::span<const Assignment> PlanStructure::pre_entries(int occ) const {
  switch (const int a = action_of(occ); occ) {
    case kInitOcc:
      return {};
    case kGoalOcc:
      return inst_->goal_entries();
    default:
      return inst_->action(static_cast<std::size_t>(a)).pre_entries();
  }
}

bool PlanStructure::precedes(int before, int after) const {
  return std::find(order_.begin(), order_.end(), std::pair{before, after}) != order_.end();
}

bool PlanStructure::has_link(const CausalLink& link) const {
  return std::find(links_.begin(), links_.end(), link) != links_.end();
}

int PlanStructure::add_occurrence(int action) {
  if (action < 0 || static_cast<std::size_t>(action) >= inst_->actions().size()) {
    throw StructuralError("occurrence of unknown action " + std::to_string(action));
  }
  occ_action_.push_back(action);
  return static_cast<int>(occ_action_.size()) - 1;
}

bool PlanStructure::add_order(int before, int after) {
  const auto n = static_cast<int>(num_occurrences());
  if (before < 0 || before >= n || after < 0 || after >= n) {
    throw StructuralError("order pair refers to unknown occurrence");
  }
  if (precedes(before, after)) return false;
  order_.emplace_back(before, after);
  return true;
}

bool PlanStructure::add_link(const CausalLink& link) {
  const auto n = static_cast<int>(num_occurrences());
  if (link.producer < 0 || link.producer >= n || link.consumer < 0 || link.consumer >= n) {
    throw StructuralError("causal link refers to unknown occurrence");
  }
  if (link.var < 0 || link.var >= inst_->num_vars() || link.val == kUndefined ||
      eff_at(link.producer, link.var) != link.val || pre_at(link.consumer, link.var) != link.val) {
    throw StructuralError("causal link does not match producer effect and consumer precondition");
  }
  if (has_link(link)) return false;
  links_.push_back(link);
  return true;
}

std::vector<Threat> threats(const PlanStructure& ps) {
  std::vector<Threat> out;
  const auto n = static_cast<int>(ps.num_occurrences());
  for (const auto& link : ps.links()) {
    for (int t = 0; t < n; ++t) {
      if (t == link.producer || t == link.consumer) continue;
      if (ps.eff_at(t, link.var) == kUndefined) continue;
      if (ps.precedes(t, link.producer) || ps.precedes(link.consumer, t)) continue;
      out.push_back({t, link});
    }
  }
  return out;
}

namespace {

bool is_linked(const PlanStructure& ps, int occ, int var, Value val) {
  return std::any_of(ps.links().begin(), ps.links().end(), [&](const CausalLink& l) {
    return l.consumer == occ && l.var == var && l.val == val;
  });
}

}  // namespace

std::vector<OpenGoal> open_goals(const PlanStructure& ps) {
  std::vector<OpenGoal> out;
  const auto n = static_cast<int>(ps.num_occurrences());
  for (int o = 0; o < n; ++o) {
    for (const auto& [var, val] : ps.pre_entries(o)) {
      if (!is_linked(ps, o, var, val)) out.push_back({o, var, val});
    }
  }
  return out;
}

bool is_complete(const PlanStructure& ps) {
  return open_goals(ps).empty() && threats(ps).empty();
}

bool is_acyclic(const PlanStructure& ps) {
  const std::size_t n = ps.num_occurrences();
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indegree(n, 0);
  for (const auto& [before, after] : ps.order()) {
    succ[static_cast<std::size_t>(before)].push_back(after);
    ++indegree[static_cast<std::size_t>(after)];
  }
  std::vector<int> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(static_cast<int>(i));
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const int o = ready.back();
    ready.pop_back();
    ++seen;
    for (int next : succ[static_cast<std::size_t>(o)]) {
      if (--indegree[static_cast<std::size_t>(next)] == 0) ready.push_back(next);
    }
  }
  return seen == n;
}

std::vector<CausalLink> establish_links(const PlanStructure& ps, int producer, int consumer,
                                        Assignment goal, Variant variant) {
  if (ps.eff_at(producer, goal.var) != goal.val || ps.pre_at(consumer, goal.var) != goal.val) {
    throw StructuralError("producer does not supply the selected open goal");
  }
  std::vector<CausalLink> out;
  if (variant == Variant::original) {
    CausalLink link{producer, goal.var, goal.val, consumer};
    if (!ps.has_link(link)) out.push_back(link);
    return out;
  }
  for (const auto& [var, val] : ps.pre_entries(consumer)) {
    if (ps.eff_at(producer, var) != val) continue;
    if (is_linked(ps, consumer, var, val)) continue;
    out.push_back({producer, var, val, consumer});
  }
  return out;
}

Plan linearize(const PlanStructure& ps) {
  const std::size_t n = ps.num_occurrences();
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indegree(n, 0);
  for (const auto& [before, after] : ps.order()) {
    succ[static_cast<std::size_t>(before)].push_back(after);
    ++indegree[static_cast<std::size_t>(after)];
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(static_cast<int>(i));
  }
  Plan plan;
  std::size_t seen = 0;
  while (!ready.empty()) {
    const int o = ready.top();
    ready.pop();
    ++seen;
    if (o != kInitOcc && o != kGoalOcc) plan.steps.push_back(ps.action_of(o));
    for (int next : succ[static_cast<std::size_t>(o)]) {
      if (--indegree[static_cast<std::size_t>(next)] == 0) ready.push(next);
    }
  }
  if (seen != n) throw StructuralError("cannot linearize a cyclic plan structure");
  return plan;
}

namespace {

// Depth-first realization of the nondeterministic procedure. Choices that
// the procedure calls arbitrary (which threat, which open goal) are fixed to
// the first in deterministic order; genuine choice points are branched.
class MarSearch {
 public:
  MarSearch(const SasInstance& inst, int k, Variant variant, MarOptions options)
      : inst_(inst), k_(k), variant_(variant), options_(options) {}

  std::optional<PlanStructure> run() {
    PlanStructure root(inst_);
    if (plan(root, 0, 0)) return std::move(found_);
    return std::nullopt;
  }

  const SearchStats& stats() const { return stats_; }

 private:
  bool plan(const PlanStructure& ps, int line5, int establish) {
    ++stats_.nodes;
    if (options_.node_budget != 0 && stats_.nodes > options_.node_budget) {
      throw ResourceError("partial-order search exceeded node budget of " +
                          std::to_string(options_.node_budget));
    }
    stats_.max_line5_per_branch = std::max(stats_.max_line5_per_branch, line5);
    stats_.max_establish_per_branch = std::max(stats_.max_establish_per_branch, establish);

    if (!is_acyclic(ps) || ps.num_occurrences() > static_cast<std::size_t>(k_) + 2) return false;

    const auto pending = threats(ps);
    const auto goals = open_goals(ps);
    if (pending.empty() && goals.empty()) {
      found_ = ps;
      return true;
    }

    if (!pending.empty()) {
      const Threat& t = pending.front();
      PlanStructure demoted = ps;
      demoted.add_order(t.threat, t.link.producer);
      if (plan(demoted, line5 + 1, establish)) return true;
      PlanStructure promoted = ps;
      promoted.add_order(t.link.consumer, t.threat);
      return plan(promoted, line5 + 1, establish);
    }

    const OpenGoal& g = goals.front();
    const Assignment wanted{g.var, g.val};

    const auto existing = static_cast<int>(ps.num_occurrences());
    for (int o = 0; o < existing; ++o) {
      if (ps.eff_at(o, g.var) != g.val) continue;
      PlanStructure child = ps;
      extend(child, o, g.occ, wanted);
      if (plan(child, line5, establish + 1)) return true;
    }

    const auto candidates = inst_.producers(g.var, g.val);
    const std::size_t limit =
        variant_ == Variant::modified ? std::min<std::size_t>(candidates.size(), 1) : candidates.size();
    for (std::size_t i = 0; i < limit; ++i) {
      PlanStructure child = ps;
      const int o = child.add_occurrence(candidates[i]);
      child.add_order(kInitOcc, o);
      child.add_order(o, kGoalOcc);
      extend(child, o, g.occ, wanted);
      if (plan(child, line5, establish + 1)) return true;
    }
    return false;
  }

  void extend(PlanStructure& ps, int producer, int consumer, Assignment goal) const {
    const auto links = establish_links(ps, producer, consumer, goal, variant_);
    ps.add_order(producer, consumer);
    for (const auto& link : links) ps.add_link(link);
  }

  const SasInstance& inst_;
  int k_;
  Variant variant_;
  MarOptions options_;
  SearchStats stats_;
  std::optional<PlanStructure> found_;
};

}  // namespace

MarResult mar_plan(const SasInstance& inst, int k, Variant variant, MarOptions options) {
  if (k < 0) throw ParameterError("plan length bound must be non-negative");
  if (variant == Variant::modified && !options.unsafe_modified && !check_restrictions(inst).p) {
    throw UnsafeVariantError(
        "the modified planner links all matching preconditions at once, which is only "
        "complete under restriction P (at most one action per variable/value effect); "
        "this instance violates P");
  }
  MarSearch search(inst, k, variant, options);
  MarResult result;
  result.structure = search.run();
  result.stats = search.stats();
  return result;
}

}  // namespace bpe
