#include "bpe/reductions.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "bpe/errors.hpp"
#include "bpe/oracle.hpp"

namespace bpe {

namespace {

std::string vertex_name(const Vertex& v) {
  return std::to_string(v.part) + "." + std::to_string(v.index);
}

std::string edge_name(const Edge& e) { return vertex_name(e.a) + "-" + vertex_name(e.b); }

Action make_action(std::string name, std::size_t n, std::vector<Assignment> pre,
                   std::vector<Assignment> eff) {
  return Action(std::move(name), PartialState::from_assignments(n, pre),
                PartialState::from_assignments(n, eff));
}

}  // namespace

ReductionOutput hitting_set_to_planning(const HittingSetInstance& hs) {
  const std::size_t n = hs.collection().size();
  std::vector<std::string> variable_roles;
  for (std::size_t c = 0; c < n; ++c) variable_roles.push_back("set:" + std::to_string(c));

  std::vector<Action> actions;
  std::vector<std::pair<std::string, std::string>> action_roles;
  for (int e = 0; e < hs.set_size(); ++e) {
    std::vector<Assignment> eff;
    for (std::size_t c = 0; c < n; ++c) {
      const auto& member = hs.collection()[c];
      if (std::binary_search(member.begin(), member.end(), e)) {
        eff.push_back({static_cast<int>(c), 1});
      }
    }
    std::string name = "hit:" + std::to_string(e);
    action_roles.emplace_back(name, "pick element " + std::to_string(e));
    actions.push_back(make_action(std::move(name), n, {}, std::move(eff)));
  }

  SasInstance inst(static_cast<int>(n), DomainSpec(2), std::move(actions),
                   PartialState(std::vector<Value>(n, 0)), PartialState(std::vector<Value>(n, 1)));
  return {std::move(inst), hs.k(), std::move(variable_roles), std::move(action_roles)};
}

ReductionOutput partitioned_clique_to_planning(const PartitionedGraph& g) {
  const int k = g.k();
  if (k < 2) throw ParameterError("clique reduction needs k >= 2, got " + std::to_string(k));

  std::vector<Vertex> vertices;
  for (int i = 0; i < k; ++i) {
    for (int a = 0; a < g.n(); ++a) vertices.push_back({i, a});
  }
  auto others = [k](int i) {
    std::vector<int> js;
    for (int j = 0; j < k; ++j) {
      if (j != i) js.push_back(j);
    }
    return js;
  };

  std::vector<std::string> variable_roles;
  std::map<Edge, int> edge_var;
  std::map<std::pair<Vertex, int>, int> vertex_var;
  std::map<std::pair<int, int>, int> check_var;
  std::map<Vertex, int> clean_var;
  auto new_var = [&](std::string role) {
    variable_roles.push_back(std::move(role));
    return static_cast<int>(variable_roles.size()) - 1;
  };

  for (const auto& e : g.edges()) edge_var[e] = new_var("edge:" + edge_name(e));
  for (const auto& v : vertices) {
    for (int j : others(v.part)) {
      vertex_var[{v, j}] = new_var("vertex:" + vertex_name(v) + ":" + std::to_string(j));
    }
  }
  for (int i = 0; i < k; ++i) {
    for (int j : others(i)) {
      check_var[{i, j}] = new_var("chk:" + std::to_string(i) + ":" + std::to_string(j));
    }
  }
  for (const auto& v : vertices) clean_var[v] = new_var("clean:" + vertex_name(v));

  const std::size_t n = variable_roles.size();
  std::vector<Action> actions;
  std::vector<std::pair<std::string, std::string>> action_roles;
  auto add = [&](std::string name, std::string role, std::vector<Assignment> pre,
                 std::vector<Assignment> eff) {
    action_roles.emplace_back(name, std::move(role));
    actions.push_back(make_action(std::move(name), n, std::move(pre), std::move(eff)));
  };

  // Group 1: choose an edge.
  for (const auto& e : g.edges()) {
    add("g1.edge:" + edge_name(e), "group 1: select edge", {}, {{edge_var.at(e), 1}});
  }
  // Group 2: a selected edge {v_i, v_j} marks x(v_i, j) and x(v_j, i).
  for (const auto& e : g.edges()) {
    const int x_e = edge_var.at(e);
    add("g2.mark:" + edge_name(e) + "@" + std::to_string(e.a.part),
        "group 2: mark endpoint in part " + std::to_string(e.a.part), {{x_e, 1}},
        {{vertex_var.at({e.a, e.b.part}), 1}});
    add("g2.mark:" + edge_name(e) + "@" + std::to_string(e.b.part),
        "group 2: mark endpoint in part " + std::to_string(e.b.part), {{x_e, 1}},
        {{vertex_var.at({e.b, e.a.part}), 1}});
  }
  // Group 3: a marked x(v, j) with v in V_i satisfies checking variable x(i, j).
  for (const auto& v : vertices) {
    for (int j : others(v.part)) {
      add("g3.check:" + vertex_name(v) + "@" + std::to_string(j),
          "group 3: check pair " + std::to_string(v.part) + "," + std::to_string(j),
          {{vertex_var.at({v, j}), 1}}, {{check_var.at({v.part, j}), 1}});
    }
  }
  // Group 4: enable the cleaner of a vertex.
  for (const auto& v : vertices) {
    add("g4.cleaner:" + vertex_name(v), "group 4: enable clean-up", {}, {{clean_var.at(v), 1}});
  }
  // Group 5: reset vertex variables of a cleaned vertex.
  for (const auto& v : vertices) {
    for (int j : others(v.part)) {
      add("g5.reset:" + vertex_name(v) + "@" + std::to_string(j), "group 5: reset vertex variable",
          {{clean_var.at(v), 1}}, {{vertex_var.at({v, j}), 0}});
    }
  }

  PartialState goal = PartialState::undefined(n);
  for (const auto& [key, var] : check_var) goal.set(static_cast<std::size_t>(var), 1);
  for (const auto& [key, var] : vertex_var) goal.set(static_cast<std::size_t>(var), 0);

  SasInstance inst(static_cast<int>(n), DomainSpec(2), std::move(actions),
                   PartialState(std::vector<Value>(n, 0)), std::move(goal));
  const int pairs = k * (k - 1) / 2;
  return {std::move(inst), 7 * pairs + k, std::move(variable_roles), std::move(action_roles)};
}

bool reduction_roundtrip_check(const HittingSetInstance& hs, const ReductionOutput& out) {
  const bool source = brute_force_hitting_set(hs).has_value();
  const bool planning = bfs_bounded_plan(out.instance, out.k_prime).plan.has_value();
  return source == planning;
}

bool reduction_roundtrip_check(const PartitionedGraph& g, const ReductionOutput& out) {
  const bool source = brute_force_partitioned_clique(g).has_value();
  const bool planning = bfs_bounded_plan(out.instance, out.k_prime).plan.has_value();
  return source == planning;
}

std::string trace_comments(const ReductionOutput& out) {
  std::ostringstream s;
  s << "# k' = " << out.k_prime << "\n";
  for (std::size_t v = 0; v < out.variable_roles.size(); ++v) {
    s << "# var " << v << ' ' << out.variable_roles[v] << "\n";
  }
  for (const auto& [name, role] : out.action_roles) {
    s << "# action " << name << ' ' << role << "\n";
  }
  return s.str();
}

}  // namespace bpe
