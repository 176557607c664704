#pragma once

// SAS+ data model and execution semantics.
//
// Variables are dense indices 0..n-1 and domain values are 0..d-1. The
// undefined marker is kUndefined, which never collides with a domain value.
// Everything here is an immutable value once constructed.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bpe {

using Value = std::int32_t;
inline constexpr Value kUndefined = -1;

class DomainSpec {
 public:
  explicit DomainSpec(int size);

  int size() const noexcept { return size_; }
  bool contains(Value v) const noexcept { return v >= 0 && v < size_; }

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

 private:
  int size_;
};

// A single variable/value pair, the sparse view of a partial state entry.
struct Assignment {
  int var;
  Value val;

  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

class PartialState {
 public:
  PartialState() = default;
  explicit PartialState(std::vector<Value> values) : values_(std::move(values)) {}
  PartialState(std::initializer_list<Value> values) : values_(values) {}

  static PartialState undefined(std::size_t n) {
    return PartialState(std::vector<Value>(n, kUndefined));
  }
  static PartialState from_assignments(std::size_t n, std::span<const Assignment> entries);

  std::size_t size() const noexcept { return values_.size(); }
  Value operator[](std::size_t var) const { return values_[var]; }
  void set(std::size_t var, Value v) { values_.at(var) = v; }

  bool is_total() const noexcept;
  bool is_defined(std::size_t var) const { return values_[var] != kUndefined; }
  std::size_t defined_count() const noexcept;
  std::vector<Assignment> defined_entries() const;

  std::span<const Value> values() const noexcept { return values_; }

  friend bool operator==(const PartialState&, const PartialState&) = default;

 private:
  std::vector<Value> values_;
};

// A total state is a partial state with no undefined entries.
using State = PartialState;

class Action {
 public:
  Action(std::string name, PartialState pre, PartialState eff);

  const std::string& name() const noexcept { return name_; }
  const PartialState& pre() const noexcept { return pre_; }
  const PartialState& eff() const noexcept { return eff_; }

  // Defined entries in ascending variable order.
  std::span<const Assignment> pre_entries() const noexcept { return pre_entries_; }
  std::span<const Assignment> eff_entries() const noexcept { return eff_entries_; }

  friend bool operator==(const Action& a, const Action& b) {
    return a.name_ == b.name_ && a.pre_ == b.pre_ && a.eff_ == b.eff_;
  }

 private:
  std::string name_;
  PartialState pre_;
  PartialState eff_;
  std::vector<Assignment> pre_entries_;
  std::vector<Assignment> eff_entries_;
};

class SasInstance {
 public:
  // Throws StructuralError unless init is total, every state has length n,
  // every defined value lies in the domain and action names are unique.
  SasInstance(int num_vars, DomainSpec domain, std::vector<Action> actions,
              PartialState init, PartialState goal);

  int num_vars() const noexcept { return num_vars_; }
  const DomainSpec& domain() const noexcept { return domain_; }
  const std::vector<Action>& actions() const noexcept { return actions_; }
  const Action& action(std::size_t index) const { return actions_.at(index); }
  const PartialState& init() const noexcept { return init_; }
  const PartialState& goal() const noexcept { return goal_; }
  std::span<const Assignment> goal_entries() const noexcept { return goal_entries_; }

  // Indices of actions with eff[var] == val, ascending.
  std::span<const int> producers(int var, Value val) const;

  std::optional<std::size_t> find_action(const std::string& name) const;

  friend bool operator==(const SasInstance& a, const SasInstance& b) {
    return a.num_vars_ == b.num_vars_ && a.domain_ == b.domain_ && a.actions_ == b.actions_ &&
           a.init_ == b.init_ && a.goal_ == b.goal_;
  }

 private:
  int num_vars_;
  DomainSpec domain_;
  std::vector<Action> actions_;
  PartialState init_;
  PartialState goal_;
  std::vector<Assignment> goal_entries_;
  std::vector<std::vector<int>> producers_;  // indexed var * d + val
};

struct Plan {
  std::vector<int> steps;

  std::size_t length() const noexcept { return steps.size(); }
  friend bool operator==(const Plan&, const Plan&) = default;
};

struct RestrictionProfile {
  bool p = true;
  bool u = true;
  bool b = false;
  bool s = true;
  int max_pre = 0;  // m_p
  int max_eff = 0;  // m_e
};

bool is_valid(const State& s, const Action& a);
State apply(const State& s, const Action& a);
bool is_goal_state(const State& s, const PartialState& goal);

// Outcome of stepping a plan; failed_step is the 0-based index of the first
// action that is not valid in its predecessor state.
struct PlanCheck {
  bool valid = false;
  std::optional<std::size_t> failed_step;
  State final_state;
};

PlanCheck check_plan(const SasInstance& inst, const Plan& plan);
bool validate_plan(const SasInstance& inst, const Plan& plan);

RestrictionProfile check_restrictions(const SasInstance& inst);

// Every action has at most max_pre defined preconditions and every
// variable/value pair is an effect of at most max_same_effect actions.
bool relaxed_p_gate(const SasInstance& inst, int max_pre, int max_same_effect);

}  // namespace bpe
