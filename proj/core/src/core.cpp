#include "bpe/core.hpp"

#include <algorithm>
#include <unordered_set>

#include "bpe/errors.hpp"

namespace bpe {

namespace {

void require_length(const PartialState& s, std::size_t n, const char* what) {
  if (s.size() != n) {
    throw StructuralError(std::string(what) + ": expected length " + std::to_string(n) +
                          ", got " + std::to_string(s.size()));
  }
}

void require_in_domain(const PartialState& s, const DomainSpec& domain, const std::string& what) {
  for (std::size_t v = 0; v < s.size(); ++v) {
    if (s[v] != kUndefined && !domain.contains(s[v])) {
      throw StructuralError(what + ": value " + std::to_string(s[v]) + " of variable " +
                            std::to_string(v) + " outside domain of size " +
                            std::to_string(domain.size()));
    }
  }
}

}  // namespace

DomainSpec::DomainSpec(int size) : size_(size) {
  if (size < 2) {
    throw StructuralError("domain size must be at least 2, got " + std::to_string(size));
  }
}

PartialState PartialState::from_assignments(std::size_t n, std::span<const Assignment> entries) {
  PartialState s = undefined(n);
  for (const auto& [var, val] : entries) {
    if (var < 0 || static_cast<std::size_t>(var) >= n) {
      throw StructuralError("assignment to variable " + std::to_string(var) + " out of range");
    }
    s.values_[static_cast<std::size_t>(var)] = val;
  }
  return s;
}

bool PartialState::is_total() const noexcept {
  return std::none_of(values_.begin(), values_.end(), [](Value v) { return v == kUndefined; });
}

std::size_t PartialState::defined_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](Value v) { return v != kUndefined; }));
}

std::vector<Assignment> PartialState::defined_entries() const {
  std::vector<Assignment> out;
  for (std::size_t v = 0; v < values_.size(); ++v) {
    if (values_[v] != kUndefined) out.push_back({static_cast<int>(v), values_[v]});
  }
  return out;
}

Action::Action(std::string name, PartialState pre, PartialState eff)
    : name_(std::move(name)),
      pre_(std::move(pre)),
      eff_(std::move(eff)),
      pre_entries_(pre_.defined_entries()),
      eff_entries_(eff_.defined_entries()) {
  if (pre_.size() != eff_.size()) {
    throw StructuralError("action " + name_ + ": precondition and effect lengths differ");
  }
}

SasInstance::SasInstance(int num_vars, DomainSpec domain, std::vector<Action> actions,
                         PartialState init, PartialState goal)
    : num_vars_(num_vars),
      domain_(domain),
      actions_(std::move(actions)),
      init_(std::move(init)),
      goal_(std::move(goal)) {
  if (num_vars_ < 0) throw StructuralError("negative variable count");
  const auto n = static_cast<std::size_t>(num_vars_);
  require_length(init_, n, "init");
  require_length(goal_, n, "goal");
  if (!init_.is_total()) throw StructuralError("init must be a total state");
  require_in_domain(init_, domain_, "init");
  require_in_domain(goal_, domain_, "goal");

  std::unordered_set<std::string> names;
  for (const auto& a : actions_) {
    require_length(a.pre(), n, ("action " + a.name() + " pre").c_str());
    require_length(a.eff(), n, ("action " + a.name() + " eff").c_str());
    require_in_domain(a.pre(), domain_, "action " + a.name() + " pre");
    require_in_domain(a.eff(), domain_, "action " + a.name() + " eff");
    if (!names.insert(a.name()).second) {
      throw StructuralError("duplicate action name " + a.name());
    }
  }

  goal_entries_ = goal_.defined_entries();
  producers_.resize(n * static_cast<std::size_t>(domain_.size()));
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    for (const auto& [var, val] : actions_[i].eff_entries()) {
      producers_[static_cast<std::size_t>(var) * domain_.size() + val].push_back(
          static_cast<int>(i));
    }
  }
}

std::span<const int> SasInstance::producers(int var, Value val) const {
  if (var < 0 || var >= num_vars_ || !domain_.contains(val)) return {};
  return producers_[static_cast<std::size_t>(var) * domain_.size() + val];
}

std::optional<std::size_t> SasInstance::find_action(const std::string& name) const {
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    if (actions_[i].name() == name) return i;
  }
  return std::nullopt;
}

bool is_valid(const State& s, const Action& a) {
  require_length(a.pre(), s.size(), "is_valid");
  for (const auto& [var, val] : a.pre_entries()) {
    if (s[static_cast<std::size_t>(var)] != val) return false;
  }
  return true;
}

State apply(const State& s, const Action& a) {
  require_length(a.eff(), s.size(), "apply");
  State t = s;
  for (const auto& [var, val] : a.eff_entries()) t.set(static_cast<std::size_t>(var), val);
  return t;
}

bool is_goal_state(const State& s, const PartialState& goal) {
  require_length(goal, s.size(), "is_goal_state");
  for (std::size_t v = 0; v < s.size(); ++v) {
    if (goal[v] != kUndefined && goal[v] != s[v]) return false;
  }
  return true;
}

PlanCheck check_plan(const SasInstance& inst, const Plan& plan) {
  PlanCheck result;
  State s = inst.init();
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const int idx = plan.steps[i];
    if (idx < 0 || static_cast<std::size_t>(idx) >= inst.actions().size()) {
      throw StructuralError("plan step " + std::to_string(i) + " refers to unknown action " +
                            std::to_string(idx));
    }
    const Action& a = inst.actions()[static_cast<std::size_t>(idx)];
    if (!is_valid(s, a)) {
      result.failed_step = i;
      result.final_state = std::move(s);
      return result;
    }
    s = apply(s, a);
  }
  result.valid = is_goal_state(s, inst.goal());
  result.final_state = std::move(s);
  return result;
}

bool validate_plan(const SasInstance& inst, const Plan& plan) {
  return check_plan(inst, plan).valid;
}

RestrictionProfile check_restrictions(const SasInstance& inst) {
  RestrictionProfile r;
  r.b = inst.domain().size() == 2;

  for (const auto& a : inst.actions()) {
    r.max_pre = std::max(r.max_pre, static_cast<int>(a.pre_entries().size()));
    r.max_eff = std::max(r.max_eff, static_cast<int>(a.eff_entries().size()));
    if (a.eff_entries().size() != 1) r.u = false;
  }

  for (int v = 0; v < inst.num_vars() && r.p; ++v) {
    for (Value x = 0; x < inst.domain().size(); ++x) {
      if (inst.producers(v, x).size() > 1) {
        r.p = false;
        break;
      }
    }
  }

  // S: all prevail conditions on a variable agree.
  const auto n = static_cast<std::size_t>(inst.num_vars());
  std::vector<Value> prevail(n, kUndefined);
  for (const auto& a : inst.actions()) {
    for (const auto& [var, val] : a.pre_entries()) {
      const auto v = static_cast<std::size_t>(var);
      if (a.eff().is_defined(v)) continue;
      if (prevail[v] == kUndefined) {
        prevail[v] = val;
      } else if (prevail[v] != val) {
        r.s = false;
      }
    }
  }
  return r;
}

bool relaxed_p_gate(const SasInstance& inst, int max_pre, int max_same_effect) {
  if (max_pre < 0) throw ParameterError("max_pre must be non-negative");
  if (max_same_effect < 1) throw ParameterError("max_same_effect must be at least 1");
  for (const auto& a : inst.actions()) {
    if (static_cast<int>(a.pre_entries().size()) > max_pre) return false;
  }
  for (int v = 0; v < inst.num_vars(); ++v) {
    for (Value x = 0; x < inst.domain().size(); ++x) {
      if (static_cast<int>(inst.producers(v, x).size()) > max_same_effect) return false;
    }
  }
  return true;
}

}  // namespace bpe
