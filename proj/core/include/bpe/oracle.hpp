#pragma once

// Ground-truth decision procedures used to cross-check the planner, the
// reductions and the model-checking compilation.

#include <cstddef>
#include <optional>
#include <vector>

#include "bpe/core.hpp"
#include "bpe/problems.hpp"

namespace bpe {

struct OracleResult {
  std::optional<Plan> plan;   // shortest plan of length <= k, if any
  std::size_t explored = 0;   // distinct states visited
};

struct BfsOptions {
  std::size_t state_budget = 20'000'000;
};

// Breadth-first search over total states from init. Successors are
// generated in action-index order, so the returned plan is stable. Throws
// ParameterError for k < 0 and ResourceError when the budget runs out.
OracleResult bfs_bounded_plan(const SasInstance& inst, int k, BfsOptions options = {});

inline constexpr int kHittingSetElementCap = 24;
inline constexpr long long kCliqueTupleCap = 1'000'000;

// Subsets of size 0..k in increasing size, lexicographic within a size.
// Returns the first hitting set found (sorted), or nullopt.
std::optional<std::vector<int>> brute_force_hitting_set(const HittingSetInstance& hs);

// Lexicographically first tuple (one vertex index per part) that is
// pairwise adjacent, or nullopt.
std::optional<std::vector<int>> brute_force_partitioned_clique(const PartitionedGraph& g);

}  // namespace bpe
