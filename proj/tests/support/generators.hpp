#pragma once

// Random instance generators and independent reference checkers shared by
// the unit and acceptance tests. Nothing here calls the semantic functions
// of the library (is_valid, apply, validate_plan, ...), so the checkers can
// serve as second opinions.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bpe/core.hpp"
#include "bpe/pop.hpp"
#include "bpe/problems.hpp"

namespace bpe::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

struct InstanceShape {
  int min_vars = 1;
  int max_vars = 4;
  int min_domain = 2;
  int max_domain = 2;
  int max_actions = 5;
  double pre_density = 0.35;
  double eff_density = 0.4;
  double goal_density = 0.5;
};

inline SasInstance random_instance(Rng& rng, const InstanceShape& shape) {
  const int n = uniform(rng, shape.min_vars, shape.max_vars);
  const int d = uniform(rng, shape.min_domain, shape.max_domain);
  const int num_actions = uniform(rng, 0, shape.max_actions);
  const auto un = static_cast<std::size_t>(n);

  auto random_partial = [&](double density) {
    std::vector<Value> values(un, kUndefined);
    for (auto& v : values) {
      if (coin(rng, density)) v = uniform(rng, 0, d - 1);
    }
    return PartialState(values);
  };

  std::vector<Value> init(un);
  for (auto& v : init) v = uniform(rng, 0, d - 1);

  std::vector<Action> actions;
  for (int a = 0; a < num_actions; ++a) {
    PartialState eff = random_partial(shape.eff_density);
    if (eff.defined_count() == 0 && n > 0) {
      eff.set(static_cast<std::size_t>(uniform(rng, 0, n - 1)), uniform(rng, 0, d - 1));
    }
    actions.emplace_back("a" + std::to_string(a), random_partial(shape.pre_density), std::move(eff));
  }
  return SasInstance(n, DomainSpec(d), std::move(actions), PartialState(init),
                     random_partial(shape.goal_density));
}

// Restriction P by construction: every defined effect (var, val) is used by
// at most one action.
inline SasInstance random_p_instance(Rng& rng, const InstanceShape& shape) {
  const int n = uniform(rng, shape.min_vars, shape.max_vars);
  const int d = uniform(rng, shape.min_domain, shape.max_domain);
  const int num_actions = uniform(rng, 1, shape.max_actions);
  const auto un = static_cast<std::size_t>(n);

  std::set<std::pair<int, int>> used;
  std::vector<Action> actions;
  for (int a = 0; a < num_actions; ++a) {
    std::vector<Value> eff(un, kUndefined);
    for (int v = 0; v < n; ++v) {
      if (!coin(rng, shape.eff_density)) continue;
      const int x = uniform(rng, 0, d - 1);
      if (used.insert({v, x}).second) eff[static_cast<std::size_t>(v)] = x;
    }
    if (std::none_of(eff.begin(), eff.end(), [](Value v) { return v != kUndefined; })) {
      // Fall back to any unused pair; stop adding actions once none remain.
      bool placed = false;
      for (int v = 0; v < n && !placed; ++v) {
        for (int x = 0; x < d && !placed; ++x) {
          if (used.insert({v, x}).second) {
            eff[static_cast<std::size_t>(v)] = x;
            placed = true;
          }
        }
      }
      if (!placed) break;
    }
    std::vector<Value> pre(un, kUndefined);
    for (auto& p : pre) {
      if (coin(rng, shape.pre_density)) p = uniform(rng, 0, d - 1);
    }
    actions.emplace_back("a" + std::to_string(a), PartialState(pre), PartialState(eff));
  }

  std::vector<Value> init(un);
  for (auto& v : init) v = uniform(rng, 0, d - 1);
  std::vector<Value> goal(un, kUndefined);
  for (auto& g : goal) {
    if (coin(rng, shape.goal_density)) g = uniform(rng, 0, d - 1);
  }
  return SasInstance(n, DomainSpec(d), std::move(actions), PartialState(init), PartialState(goal));
}

inline std::vector<int> random_sequence(Rng& rng, const SasInstance& inst, int max_len) {
  std::vector<int> steps;
  if (inst.actions().empty()) return steps;
  const int len = uniform(rng, 0, max_len);
  for (int i = 0; i < len; ++i) {
    steps.push_back(uniform(rng, 0, static_cast<int>(inst.actions().size()) - 1));
  }
  return steps;
}

// Step simulator over a sparse map representation, written without the
// library's semantic helpers.
inline bool reference_plan_check(const SasInstance& inst, const std::vector<int>& steps) {
  std::map<int, int> state;
  for (int v = 0; v < inst.num_vars(); ++v) state[v] = inst.init().values()[static_cast<std::size_t>(v)];
  for (int step : steps) {
    const Action& a = inst.actions().at(static_cast<std::size_t>(step));
    const auto pre = a.pre().values();
    for (std::size_t v = 0; v < pre.size(); ++v) {
      if (pre[v] >= 0 && state[static_cast<int>(v)] != pre[v]) return false;
    }
    const auto eff = a.eff().values();
    std::map<int, int> next = state;
    for (std::size_t v = 0; v < eff.size(); ++v) {
      if (eff[v] >= 0) next[static_cast<int>(v)] = eff[v];
    }
    state = std::move(next);
  }
  const auto goal = inst.goal().values();
  for (std::size_t v = 0; v < goal.size(); ++v) {
    if (goal[v] >= 0 && state[static_cast<int>(v)] != goal[v]) return false;
  }
  return true;
}

// Exhaustive enumeration of all action sequences of length 0..k; returns
// the length of the shortest plan or -1.
inline int shortest_plan_by_enumeration(const SasInstance& inst, int k) {
  const int num_actions = static_cast<int>(inst.actions().size());
  for (int len = 0; len <= k; ++len) {
    if (len > 0 && num_actions == 0) break;
    std::vector<int> seq(static_cast<std::size_t>(len), 0);
    for (;;) {
      if (reference_plan_check(inst, seq)) return len;
      int i = len - 1;
      while (i >= 0 && seq[static_cast<std::size_t>(i)] == num_actions - 1) {
        seq[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0 || num_actions == 0) break;
      ++seq[static_cast<std::size_t>(i)];
    }
  }
  return -1;
}

// Uniformly random choice among available occurrences at each step of a
// topological sort, restricted to non-endpoint occurrences.
inline std::vector<int> random_linearization(Rng& rng, const PlanStructure& ps) {
  const std::size_t n = ps.num_occurrences();
  std::vector<int> indegree(n, 0);
  for (const auto& [before, after] : ps.order()) ++indegree[static_cast<std::size_t>(after)];
  std::vector<int> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(static_cast<int>(i));
  }
  std::vector<int> steps;
  while (!ready.empty()) {
    const auto pick = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(ready.size()) - 1));
    const int o = ready[pick];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(pick));
    if (o != kInitOcc && o != kGoalOcc) steps.push_back(ps.action_of(o));
    for (const auto& [before, after] : ps.order()) {
      if (before == o && --indegree[static_cast<std::size_t>(after)] == 0) ready.push_back(after);
    }
  }
  return steps;
}

inline HittingSetInstance random_hitting_set(Rng& rng, int max_elements, int max_sets, int max_k) {
  const int s = uniform(rng, 1, max_elements);
  const int c = uniform(rng, 0, max_sets);
  std::vector<std::vector<int>> collection;
  for (int i = 0; i < c; ++i) {
    std::vector<int> member;
    for (int e = 0; e < s; ++e) {
      if (coin(rng, 0.35)) member.push_back(e);
    }
    if (member.empty()) member.push_back(uniform(rng, 0, s - 1));
    collection.push_back(std::move(member));
  }
  const int k = uniform(rng, 0, std::min(max_k, c));
  return HittingSetInstance(s, std::move(collection), k);
}

inline PartitionedGraph random_partitioned_graph(Rng& rng, int max_k, int max_n, double density) {
  const int k = uniform(rng, 1, max_k);
  const int n = uniform(rng, 1, max_n);
  std::set<Edge> edges;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          if (coin(rng, density)) edges.insert(Edge({i, a}, {j, b}));
        }
      }
    }
  }
  return PartitionedGraph(k, n, std::move(edges));
}

}  // namespace bpe::testing
