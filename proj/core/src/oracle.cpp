#include "bpe/oracle.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>

#include "bpe/errors.hpp"

namespace bpe {

namespace {

struct StateHash {
  std::size_t operator()(const std::vector<Value>& values) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Value v : values) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ULL;
    }
    return h;
  }
};

struct SearchNode {
  std::size_t parent;
  int action;
  int depth;
};

Plan extract_plan(const std::vector<SearchNode>& nodes, std::size_t leaf) {
  Plan plan;
  for (std::size_t i = leaf; nodes[i].action >= 0; i = nodes[i].parent) {
    plan.steps.push_back(nodes[i].action);
  }
  std::reverse(plan.steps.begin(), plan.steps.end());
  return plan;
}

}  // namespace

OracleResult bfs_bounded_plan(const SasInstance& inst, int k, BfsOptions options) {
  if (k < 0) throw ParameterError("plan length bound must be non-negative");

  OracleResult result;
  std::unordered_map<std::vector<Value>, std::size_t, StateHash> index;
  std::vector<const std::vector<Value>*> states;
  std::vector<SearchNode> nodes;

  auto visit = [&](std::vector<Value> values, SearchNode node) -> std::optional<std::size_t> {
    auto [it, inserted] = index.try_emplace(std::move(values), nodes.size());
    if (!inserted) return std::nullopt;
    if (index.size() > options.state_budget) {
      throw ResourceError("breadth-first search exceeded state budget of " +
                          std::to_string(options.state_budget));
    }
    states.push_back(&it->first);
    nodes.push_back(node);
    return it->second;
  };

  const auto init_values = inst.init().values();
  visit(std::vector<Value>(init_values.begin(), init_values.end()), {0, -1, 0});
  if (is_goal_state(inst.init(), inst.goal())) {
    result.plan = Plan{};
    result.explored = index.size();
    return result;
  }

  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const std::size_t current = frontier.front();
    frontier.pop_front();
    if (nodes[current].depth >= k) continue;

    for (std::size_t a = 0; a < inst.actions().size(); ++a) {
      const Action& action = inst.actions()[a];
      const std::vector<Value>& s = *states[current];
      const bool applicable = std::all_of(
          action.pre_entries().begin(), action.pre_entries().end(),
          [&](const Assignment& p) { return s[static_cast<std::size_t>(p.var)] == p.val; });
      if (!applicable) continue;

      std::vector<Value> next = s;
      for (const auto& [var, val] : action.eff_entries()) next[static_cast<std::size_t>(var)] = val;
      const bool at_goal = std::all_of(
          inst.goal_entries().begin(), inst.goal_entries().end(),
          [&](const Assignment& g) { return next[static_cast<std::size_t>(g.var)] == g.val; });

      auto id = visit(std::move(next),
                      {current, static_cast<int>(a), nodes[current].depth + 1});
      if (!id) continue;
      if (at_goal) {
        result.plan = extract_plan(nodes, *id);
        result.explored = index.size();
        return result;
      }
      frontier.push_back(*id);
    }
  }
  result.explored = index.size();
  return result;
}

std::optional<std::vector<int>> brute_force_hitting_set(const HittingSetInstance& hs) {
  if (hs.set_size() > kHittingSetElementCap) {
    throw ResourceError("hitting set brute force limited to |S| <= " +
                        std::to_string(kHittingSetElementCap));
  }
  const int limit = std::min(hs.k(), hs.set_size());
  for (int size = 0; size <= limit; ++size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
    for (;;) {
      if (hs.is_hitting_set(pick)) return pick;
      // Advance to the next combination in lexicographic order.
      int i = size - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == hs.set_size() - size + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) {
        pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }
  return std::nullopt;
}

std::optional<std::vector<int>> brute_force_partitioned_clique(const PartitionedGraph& g) {
  long long tuples = 1;
  for (int i = 0; i < g.k(); ++i) {
    tuples *= g.n();
    if (tuples > kCliqueTupleCap) {
      throw ResourceError("clique brute force limited to n^k <= " + std::to_string(kCliqueTupleCap));
    }
  }

  std::vector<int> pick(static_cast<std::size_t>(g.k()), 0);
  // Depth-first in lexicographic order; a prefix that is not a clique cannot
  // extend to one, so pruning it keeps the first hit lexicographically least.
  auto consistent = [&](int part) {
    for (int j = 0; j < part; ++j) {
      if (!g.adjacent({j, pick[static_cast<std::size_t>(j)]},
                      {part, pick[static_cast<std::size_t>(part)]})) {
        return false;
      }
    }
    return true;
  };
  int part = 0;
  pick[0] = 0;
  while (part >= 0) {
    auto& slot = pick[static_cast<std::size_t>(part)];
    if (slot >= g.n()) {
      --part;
      if (part >= 0) ++pick[static_cast<std::size_t>(part)];
      continue;
    }
    if (!consistent(part)) {
      ++slot;
      continue;
    }
    if (part == g.k() - 1) return pick;
    ++part;
    pick[static_cast<std::size_t>(part)] = 0;
  }
  return std::nullopt;
}

}  // namespace bpe
