#pragma once

// Partial-order causal-link planning.
//
// A PlanStructure is the search node: a set of action occurrences, a strict
// order over them and a set of causal links. mar_plan runs the MAR
// procedure as a depth-first backtracking search, in
// either its original form (one link per establishment step) or the modified
// form that links every open goal of the consumer the producer can supply at
// once. Under restriction P the modified form explores a search tree whose
// size depends only on k.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bpe/core.hpp"

namespace bpe {

inline constexpr int kInitOcc = 0;  // o_I: eff = init, no preconditions
inline constexpr int kGoalOcc = 1;  // o_G: pre = goal, no effects

struct CausalLink {
  int producer;
  int var;
  Value val;
  int consumer;

  friend bool operator==(const CausalLink&, const CausalLink&) = default;
};

struct Threat {
  int threat;
  CausalLink link;

  friend bool operator==(const Threat&, const Threat&) = default;
};

struct OpenGoal {
  int occ;
  int var;
  Value val;

  friend bool operator==(const OpenGoal&, const OpenGoal&) = default;
};

class PlanStructure {
 public:
  // The empty structure <{o_I, o_G}, {o_I < o_G}, {}>. The instance must
  // outlive the structure.
  explicit PlanStructure(const SasInstance& inst);

  const SasInstance& instance() const noexcept { return *inst_; }

  // Occurrence ids are dense: 0 = o_I, 1 = o_G, >= 2 action copies.
  std::size_t num_occurrences() const noexcept { return occ_action_.size(); }
  // Action index of occurrence `occ`, or -1 for o_I and o_G.
  int action_of(int occ) const { return occ_action_.at(static_cast<std::size_t>(occ)); }

  Value pre_at(int occ, int var) const;
  Value eff_at(int occ, int var) const;
  // Defined preconditions of `occ` in ascending variable order.
  std::span<const Assignment> pre_entries(int occ) const;

  const std::vector<std::pair<int, int>>& order() const noexcept { return order_; }
  const std::vector<CausalLink>& links() const noexcept { return links_; }

  bool precedes(int before, int after) const;
  bool has_link(const CausalLink& link) const;

  int add_occurrence(int action);
  // Idempotent; returns whether the pair was new.
  bool add_order(int before, int after);
  // Idempotent; returns whether the link was new. Throws StructuralError if
  // the endpoints are unknown or the link does not match eff/pre.
  bool add_link(const CausalLink& link);

 private:
  const SasInstance* inst_;
  std::vector<int> occ_action_;
  std::vector<std::pair<int, int>> order_;
  std::vector<CausalLink> links_;
};

// Unresolved threats: o_t with a defined effect on the link variable,
// distinct from both endpoints, and neither o_t < producer nor
// consumer < o_t in the order. Ordered by link insertion, then threat id.
std::vector<Threat> threats(const PlanStructure& ps);

// Defined preconditions with no incoming link, ordered by (occ, var).
std::vector<OpenGoal> open_goals(const PlanStructure& ps);

bool is_complete(const PlanStructure& ps);
bool is_acyclic(const PlanStructure& ps);

enum class Variant { original, modified };

// Links added when `producer` is chosen for the open goal `goal` of
// `consumer`. The original variant returns exactly that link; the modified
// variant returns one link per currently open goal <consumer, w, y> with
// eff(producer)[w] == y. Links already in the structure are never returned.
std::vector<CausalLink> establish_links(const PlanStructure& ps, int producer, int consumer,
                                        Assignment goal, Variant variant);

// Topological order of the non-endpoint occurrences mapped to action
// indices, smallest available occurrence id first. Throws StructuralError
// on a cyclic order.
Plan linearize(const PlanStructure& ps);

struct SearchStats {
  std::uint64_t nodes = 0;           // recursive calls
  int max_line5_per_branch = 0;      // threat resolutions on any branch
  int max_establish_per_branch = 0;  // establishment steps on any branch
};

struct MarOptions {
  // Permit the modified variant on instances outside restriction P.
  bool unsafe_modified = false;
  // Zero means unbounded; otherwise ResourceError after this many nodes.
  std::uint64_t node_budget = 0;
};

struct MarResult {
  std::optional<PlanStructure> structure;
  SearchStats stats;
};

// Throws ParameterError for k < 0 and UnsafeVariantError for the modified
// variant on a non-P instance unless options.unsafe_modified is set.
MarResult mar_plan(const SasInstance& inst, int k, Variant variant, MarOptions options = {});

}  // namespace bpe
