#pragma once

// Compilation of bounded plan existence into first-order model checking.
//
// build_structure turns an instance into a finite relational structure whose
// universe is V + A + D+ (domain values plus the undefined marker), and
// build_phi produces a formula  exists a1..ak forall v x . matrix  that holds
// in the structure iff the instance (padded with a no-op action) has a plan
// of length at most k. The formula depends on k only.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bpe/core.hpp"

namespace bpe {

enum class ElementKind { variable, action, value };

struct Element {
  ElementKind kind;
  int index;  // variable index, action index, or domain value (kUndefined for u)

  friend bool operator==(const Element&, const Element&) = default;
};

struct Relation {
  int arity = 0;
  std::set<std::vector<int>> tuples;  // element ids
};

class RelationalStructure {
 public:
  std::vector<Element> universe;
  std::vector<std::string> labels;  // printable name per element
  std::map<std::string, Relation> relations;

  std::size_t size() const noexcept { return universe.size(); }
  const Relation& relation(const std::string& name) const;
  bool holds(const std::string& name, const std::vector<int>& tuple) const;

  // One line per relation: "name/arity: (t1 t2) (t1 t2) ...", preceded by the
  // universe listing.
  std::string dump() const;
};

class Formula {
 public:
  enum class Kind { atom, negation, conjunction, disjunction, implication };

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Kind kind;
    std::string relation;           // atom only
    std::vector<std::string> args;  // atom only
    std::vector<NodePtr> children;
  };

  static NodePtr atom(std::string relation, std::vector<std::string> args);
  static NodePtr negation(NodePtr f);
  static NodePtr conjunction(std::vector<NodePtr> fs);
  static NodePtr disjunction(std::vector<NodePtr> fs);
  static NodePtr implication(NodePtr premise, NodePtr conclusion);

  Formula(std::vector<std::string> exists_vars, std::vector<std::string> forall_vars,
          NodePtr matrix);

  const std::vector<std::string>& exists_vars() const noexcept { return exists_; }
  const std::vector<std::string>& forall_vars() const noexcept { return forall_; }
  const NodePtr& matrix() const noexcept { return matrix_; }

  // Node count of the fully expanded matrix tree (shared subterms counted
  // once per occurrence).
  std::size_t size() const;

  // Prefix is exists* forall^u' with u' <= u, variable names are distinct
  // and every term is one of them.
  bool in_sigma2(std::size_t max_universals) const;

  // (exists (a1 ... ak) (forall (v x) MATRIX)), fully expanded.
  std::string to_sexpr() const;

  static std::size_t size_of(const NodePtr& node);
  static std::string sexpr_of(const NodePtr& node);

 private:
  std::vector<std::string> exists_;
  std::vector<std::string> forall_;
  NodePtr matrix_;
};

inline constexpr const char* kDummyActionName = "~noop";

// Append the no-op action (no preconditions, no effects). Idempotent.
SasInstance add_dummy(const SasInstance& inst);

RelationalStructure build_structure(const SasInstance& inst);

// fvalue over the first i action variables: holds iff executing them from
// init leaves variable `v` at value `x`. Free variables v, x and
// action_vars[0..i).
Formula::NodePtr build_fvalue(int i, const std::vector<std::string>& action_vars);

// Throws ParameterError for k < 1.
Formula build_phi(int k);
// Same formula; the instance does not influence it.
Formula build_phi(const SasInstance& inst, int k);

struct EvalOptions {
  // Upper bound on |U|^(#exists + #forall); ResourceError beyond it.
  std::uint64_t assignment_budget = 2'000'000'000ULL;
};

// Satisfying values (element ids) for the existential block, or nullopt.
// Throws StructuralError on unknown relations, arity mismatches or free
// terms.
std::optional<std::vector<int>> find_witness(const RelationalStructure& structure,
                                             const Formula& phi, EvalOptions options = {});
bool evaluate(const RelationalStructure& structure, const Formula& phi, EvalOptions options = {});

struct FoDecision {
  bool plan_exists = false;
  std::optional<Plan> plan;  // witness actions with the no-op removed
};

// k = 0 is answered by a direct goal check; otherwise model checking over
// build_structure(add_dummy(inst)) and build_phi(k).
FoDecision decide_via_model_checking(const SasInstance& inst, int k, EvalOptions options = {});

}  // namespace bpe
