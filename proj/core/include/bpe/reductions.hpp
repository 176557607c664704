#pragma once

// Parameterized reductions into bounded planning, used as instance
// generators. Both are deterministic functions of their input: variables
// and actions are laid out and named in a fixed order, so serialized outputs
// can be compared byte for byte.

#include <string>
#include <utility>
#include <vector>

#include "bpe/core.hpp"
#include "bpe/problems.hpp"

namespace bpe {

struct ReductionOutput {
  SasInstance instance;
  int k_prime;
  // Role of each variable, by index.
  std::vector<std::string> variable_roles;
  // Action name -> gadget role, in action order.
  std::vector<std::pair<std::string, std::string>> action_roles;
};

// Hitting Set -> planning with restrictions B and S and no preconditions.
// One boolean variable per member set, one action per element that sets
// every member containing it; init all 0, goal all 1, k' = k.
ReductionOutput hitting_set_to_planning(const HittingSetInstance& hs);

// Partitioned Clique -> planning with restrictions U, B and S, at most one
// precondition per action. k' = 7 * C(k,2) + k. Throws ParameterError for
// k < 2.
//
// Variable layout (each block in lexicographic order):
//   edge      x(e)        for e in E
//   vertex    x(v, j)     for v in V_i, j != i
//   checking  x(i, j)     for i, j != i
//   clean-up  x(v)        for v in V
// Action layout: the five groups in order, with group 2 emitting a^e_i
// before a^e_j for each edge.
ReductionOutput partitioned_clique_to_planning(const PartitionedGraph& g);

// Brute-force source solver and breadth-first planner agree on the answer.
// Oracle resource errors propagate.
bool reduction_roundtrip_check(const HittingSetInstance& hs, const ReductionOutput& out);
bool reduction_roundtrip_check(const PartitionedGraph& g, const ReductionOutput& out);

// Comment block ("# ..." lines) describing variable and action roles, for
// prefixing a serialized instance.
std::string trace_comments(const ReductionOutput& out);

}  // namespace bpe
