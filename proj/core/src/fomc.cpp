#include "bpe/fomc.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "bpe/errors.hpp"

namespace bpe {

const Relation& RelationalStructure::relation(const std::string& name) const {
  auto it = relations.find(name);
  if (it == relations.end()) throw StructuralError("unknown relation '" + name + "'");
  return it->second;
}

bool RelationalStructure::holds(const std::string& name, const std::vector<int>& tuple) const {
  return relation(name).tuples.contains(tuple);
}

std::string RelationalStructure::dump() const {
  std::ostringstream out;
  out << "universe/" << universe.size() << ":";
  for (const auto& label : labels) out << ' ' << label;
  out << "\n";
  for (const auto& [name, rel] : relations) {
    out << name << '/' << rel.arity << ":";
    for (const auto& tuple : rel.tuples) {
      out << " (";
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        out << (i ? " " : "") << labels[static_cast<std::size_t>(tuple[i])];
      }
      out << ')';
    }
    out << "\n";
  }
  return out.str();
}

Formula::NodePtr Formula::atom(std::string relation, std::vector<std::string> args) {
  return std::make_shared<const Node>(Node{Kind::atom, std::move(relation), std::move(args), {}});
}

Formula::NodePtr Formula::negation(NodePtr f) {
  return std::make_shared<const Node>(Node{Kind::negation, {}, {}, {std::move(f)}});
}

Formula::NodePtr Formula::conjunction(std::vector<NodePtr> fs) {
  return std::make_shared<const Node>(Node{Kind::conjunction, {}, {}, std::move(fs)});
}

Formula::NodePtr Formula::disjunction(std::vector<NodePtr> fs) {
  return std::make_shared<const Node>(Node{Kind::disjunction, {}, {}, std::move(fs)});
}

Formula::NodePtr Formula::implication(NodePtr premise, NodePtr conclusion) {
  return std::make_shared<const Node>(
      Node{Kind::implication, {}, {}, {std::move(premise), std::move(conclusion)}});
}

Formula::Formula(std::vector<std::string> exists_vars, std::vector<std::string> forall_vars,
                 NodePtr matrix)
    : exists_(std::move(exists_vars)), forall_(std::move(forall_vars)), matrix_(std::move(matrix)) {
  if (!matrix_) throw StructuralError("formula without matrix");
}

std::size_t Formula::size_of(const NodePtr& node) {
  std::size_t total = 1;
  for (const auto& child : node->children) total += size_of(child);
  return total;
}

std::size_t Formula::size() const { return size_of(matrix_); }

std::string Formula::sexpr_of(const NodePtr& node) {
  std::string out = "(";
  switch (node->kind) {
    case Kind::atom:
      out += node->relation;
      for (const auto& a : node->args) out += " " + a;
      return out + ")";
    case Kind::negation:
      out += "not";
      break;
    case Kind::conjunction:
      out += "and";
      break;
    case Kind::disjunction:
      out += "or";
      break;
    case Kind::implication:
      out += "implies";
      break;
  }
  for (const auto& child : node->children) out += " " + sexpr_of(child);
  return out + ")";
}

std::string Formula::to_sexpr() const {
  auto block = [](const char* q, const std::vector<std::string>& names, const std::string& body) {
    if (names.empty()) return body;
    std::string out = std::string("(") + q + " (";
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? " " : "") + names[i];
    return out + ") " + body + ")";
  };
  return block("exists", exists_, block("forall", forall_, sexpr_of(matrix_)));
}

bool Formula::in_sigma2(std::size_t max_universals) const {
  if (forall_.size() > max_universals) return false;
  std::unordered_set<std::string> bound;
  for (const auto& name : exists_) {
    if (!bound.insert(name).second) return false;
  }
  for (const auto& name : forall_) {
    if (!bound.insert(name).second) return false;
  }
  std::vector<const Node*> stack{matrix_.get()};
  while (!stack.empty()) {
    const Node* node = stack.back();
    stack.pop_back();
    for (const auto& a : node->args) {
      if (!bound.contains(a)) return false;
    }
    for (const auto& c : node->children) stack.push_back(c.get());
  }
  return true;
}

SasInstance add_dummy(const SasInstance& inst) {
  if (auto existing = inst.find_action(kDummyActionName)) {
    const Action& a = inst.action(*existing);
    if (!a.pre_entries().empty() || !a.eff_entries().empty()) {
      throw ParameterError(std::string("action ") + kDummyActionName +
                           " is reserved for the no-op action");
    }
    return inst;
  }
  const auto n = static_cast<std::size_t>(inst.num_vars());
  auto actions = inst.actions();
  actions.emplace_back(kDummyActionName, PartialState::undefined(n), PartialState::undefined(n));
  return SasInstance(inst.num_vars(), inst.domain(), std::move(actions), inst.init(), inst.goal());
}

RelationalStructure build_structure(const SasInstance& inst) {
  RelationalStructure s;
  const int n = inst.num_vars();
  const auto num_actions = static_cast<int>(inst.actions().size());
  const int d = inst.domain().size();

  const int first_action = n;
  const int first_value = n + num_actions;
  const int undefined_id = first_value + d;
  auto var_id = [](int v) { return v; };
  auto act_id = [&](int a) { return first_action + a; };
  auto val_id = [&](Value x) { return x == kUndefined ? undefined_id : first_value + x; };

  for (int v = 0; v < n; ++v) {
    s.universe.push_back({ElementKind::variable, v});
    s.labels.push_back("v" + std::to_string(v));
  }
  for (int a = 0; a < num_actions; ++a) {
    s.universe.push_back({ElementKind::action, a});
    s.labels.push_back("a:" + inst.action(static_cast<std::size_t>(a)).name());
  }
  for (Value x = 0; x < d; ++x) {
    s.universe.push_back({ElementKind::value, x});
    s.labels.push_back(std::to_string(x));
  }
  s.universe.push_back({ElementKind::value, kUndefined});
  s.labels.push_back("u");

  auto rel = [&](const char* name, int arity) -> Relation& {
    Relation& r = s.relations[name];
    r.arity = arity;
    return r;
  };
  Relation& var = rel("var", 1);
  Relation& act = rel("act", 1);
  Relation& dom = rel("dom", 1);
  Relation& init = rel("init", 2);
  Relation& goalv = rel("goalv", 2);
  Relation& pre = rel("pre", 2);
  Relation& post = rel("post", 2);
  Relation& prev = rel("prev", 3);
  Relation& postv = rel("postv", 3);

  for (int v = 0; v < n; ++v) {
    var.tuples.insert({var_id(v)});
    init.tuples.insert({var_id(v), val_id(inst.init()[static_cast<std::size_t>(v)])});
  }
  for (const auto& [v, x] : inst.goal_entries()) goalv.tuples.insert({var_id(v), val_id(x)});
  for (Value x = 0; x < d; ++x) dom.tuples.insert({val_id(x)});
  dom.tuples.insert({undefined_id});

  for (int a = 0; a < num_actions; ++a) {
    const Action& action = inst.action(static_cast<std::size_t>(a));
    act.tuples.insert({act_id(a)});
    for (const auto& [v, x] : action.pre_entries()) {
      pre.tuples.insert({act_id(a), var_id(v)});
      prev.tuples.insert({act_id(a), var_id(v), val_id(x)});
    }
    for (const auto& [v, x] : action.eff_entries()) {
      post.tuples.insert({act_id(a), var_id(v)});
      postv.tuples.insert({act_id(a), var_id(v), val_id(x)});
    }
  }
  return s;
}

Formula::NodePtr build_fvalue(int i, const std::vector<std::string>& action_vars) {
  if (i < 0 || static_cast<std::size_t>(i) > action_vars.size()) {
    throw ParameterError("fvalue depth out of range");
  }
  Formula::NodePtr f = Formula::atom("init", {"v", "x"});
  for (int step = 0; step < i; ++step) {
    const auto& a = action_vars[static_cast<std::size_t>(step)];
    f = Formula::disjunction(
        {Formula::conjunction({f, Formula::negation(Formula::atom("post", {a, "v"}))}),
         Formula::atom("postv", {a, "v", "x"})});
  }
  return f;
}

Formula build_phi(int k) {
  if (k < 1) throw ParameterError("formula needs k >= 1; decide k = 0 by a direct goal check");
  std::vector<std::string> action_vars;
  for (int i = 1; i <= k; ++i) action_vars.push_back("a" + std::to_string(i));

  // fvalue for every prefix, shared between the precondition checks and the
  // goal check.
  std::vector<Formula::NodePtr> fvalue{Formula::atom("init", {"v", "x"})};
  for (int i = 1; i <= k; ++i) {
    const auto& a = action_vars[static_cast<std::size_t>(i - 1)];
    fvalue.push_back(Formula::disjunction(
        {Formula::conjunction({fvalue.back(), Formula::negation(Formula::atom("post", {a, "v"}))}),
         Formula::atom("postv", {a, "v", "x"})}));
  }

  std::vector<Formula::NodePtr> acts;
  std::vector<Formula::NodePtr> checks;
  for (int i = 1; i <= k; ++i) {
    const auto& a = action_vars[static_cast<std::size_t>(i - 1)];
    acts.push_back(Formula::atom("act", {a}));
    checks.push_back(Formula::implication(Formula::atom("prev", {a, "v", "x"}),
                                          fvalue[static_cast<std::size_t>(i - 1)]));
  }
  auto check_pre_all = Formula::conjunction(std::move(checks));
  auto check_goal =
      Formula::implication(Formula::atom("goalv", {"v", "x"}), fvalue[static_cast<std::size_t>(k)]);

  auto guard = Formula::conjunction({Formula::atom("var", {"v"}), Formula::atom("dom", {"x"})});
  auto matrix = Formula::conjunction(
      {Formula::conjunction(std::move(acts)),
       Formula::implication(std::move(guard),
                            Formula::conjunction({std::move(check_pre_all), std::move(check_goal)}))});
  return Formula(std::move(action_vars), {"v", "x"}, std::move(matrix));
}

Formula build_phi(const SasInstance& /*inst*/, int k) { return build_phi(k); }

namespace {

class Evaluator {
 public:
  Evaluator(const RelationalStructure& structure, const Formula& phi)
      : universe_size_(structure.size()) {
    int slot = 0;
    for (const auto& name : phi.exists_vars()) slots_[name] = slot++;
    for (const auto& name : phi.forall_vars()) {
      if (!slots_.try_emplace(name, slot).second) {
        throw StructuralError("variable '" + name + "' bound twice");
      }
      ++slot;
    }
    if (slots_.size() != static_cast<std::size_t>(slot)) {
      throw StructuralError("duplicate quantified variable");
    }
    for (const auto& [name, rel] : structure.relations) {
      auto& table = tables_[name];
      table.arity = rel.arity;
      for (const auto& tuple : rel.tuples) table.keys.insert(encode(tuple));
    }
    root_ = compile(phi.matrix());
  }

  bool eval(const std::vector<int>& assignment) const { return eval(root_, assignment); }

 private:
  struct Table {
    int arity = 0;
    std::unordered_set<std::uint64_t> keys;
  };

  struct Compiled {
    Formula::Kind kind;
    const Table* table = nullptr;
    std::vector<int> slots;
    std::vector<std::size_t> children;
  };

  template <class Tuple>
  std::uint64_t encode(const Tuple& tuple) const {
    std::uint64_t key = 0;
    for (int id : tuple) key = key * universe_size_ + static_cast<std::uint64_t>(id);
    return key;
  }

  std::size_t compile(const Formula::NodePtr& node) {
    if (auto it = memo_.find(node.get()); it != memo_.end()) return it->second;
    Compiled c{node->kind, nullptr, {}, {}};
    if (node->kind == Formula::Kind::atom) {
      auto t = tables_.find(node->relation);
      if (t == tables_.end()) throw StructuralError("unknown relation '" + node->relation + "'");
      if (static_cast<std::size_t>(t->second.arity) != node->args.size()) {
        throw StructuralError("relation '" + node->relation + "' has arity " +
                              std::to_string(t->second.arity) + ", used with " +
                              std::to_string(node->args.size()) + " arguments");
      }
      c.table = &t->second;
      for (const auto& arg : node->args) {
        auto s = slots_.find(arg);
        if (s == slots_.end()) throw StructuralError("free variable '" + arg + "'");
        c.slots.push_back(s->second);
      }
    } else {
      for (const auto& child : node->children) c.children.push_back(compile(child));
    }
    nodes_.push_back(std::move(c));
    memo_[node.get()] = nodes_.size() - 1;
    return nodes_.size() - 1;
  }

  bool eval(std::size_t id, const std::vector<int>& assignment) const {
    const Compiled& c = nodes_[id];
    switch (c.kind) {
      case Formula::Kind::atom: {
        std::uint64_t key = 0;
        for (int s : c.slots) {
          key = key * universe_size_ + static_cast<std::uint64_t>(assignment[static_cast<std::size_t>(s)]);
        }
        return c.table->keys.contains(key);
      }
      case Formula::Kind::negation:
        return !eval(c.children[0], assignment);
      case Formula::Kind::conjunction:
        return std::all_of(c.children.begin(), c.children.end(),
                           [&](std::size_t ch) { return eval(ch, assignment); });
      case Formula::Kind::disjunction:
        return std::any_of(c.children.begin(), c.children.end(),
                           [&](std::size_t ch) { return eval(ch, assignment); });
      case Formula::Kind::implication:
        return !eval(c.children[0], assignment) || eval(c.children[1], assignment);
    }
    return false;
  }

  std::uint64_t universe_size_;
  std::unordered_map<std::string, int> slots_;
  std::unordered_map<std::string, Table> tables_;
  std::unordered_map<const Formula::Node*, std::size_t> memo_;
  std::vector<Compiled> nodes_;
  std::size_t root_ = 0;
};

// Advance an odometer over [begin, end) of `digits`; false once it wraps.
bool advance(std::vector<int>& digits, std::size_t begin, std::size_t end, int base) {
  for (std::size_t i = end; i > begin; --i) {
    if (++digits[i - 1] < base) return true;
    digits[i - 1] = 0;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_witness(const RelationalStructure& structure,
                                             const Formula& phi, EvalOptions options) {
  Evaluator evaluator(structure, phi);
  const std::size_t t = phi.exists_vars().size();
  const std::size_t total = t + phi.forall_vars().size();
  const auto base = static_cast<int>(structure.size());

  std::uint64_t assignments = 1;
  for (std::size_t i = 0; i < total; ++i) {
    if (assignments > options.assignment_budget / std::max<std::uint64_t>(1, structure.size())) {
      throw ResourceError("model checking exceeds the assignment budget of " +
                          std::to_string(options.assignment_budget));
    }
    assignments *= structure.size();
  }
  std::vector<int> assignment(total, 0);
  do {
    std::fill(assignment.begin() + static_cast<std::ptrdiff_t>(t), assignment.end(), 0);
    bool all = true;
    do {
      if (!evaluator.eval(assignment)) {
        all = false;
        break;
      }
    } while (advance(assignment, t, total, base));
    if (all) return std::vector<int>(assignment.begin(), assignment.begin() + static_cast<std::ptrdiff_t>(t));
  } while (advance(assignment, 0, t, base));
  return std::nullopt;
}

bool evaluate(const RelationalStructure& structure, const Formula& phi, EvalOptions options) {
  return find_witness(structure, phi, options).has_value();
}

FoDecision decide_via_model_checking(const SasInstance& inst, int k, EvalOptions options) {
  if (k < 0) throw ParameterError("plan length bound must be non-negative");
  FoDecision decision;
  if (k == 0) {
    decision.plan_exists = is_goal_state(inst.init(), inst.goal());
    if (decision.plan_exists) decision.plan = Plan{};
    return decision;
  }
  const SasInstance padded = add_dummy(inst);
  const RelationalStructure structure = build_structure(padded);
  auto witness = find_witness(structure, build_phi(k), options);
  if (!witness) return decision;

  decision.plan_exists = true;
  Plan plan;
  for (int id : *witness) {
    const Element& e = structure.universe[static_cast<std::size_t>(id)];
    const Action& a = padded.action(static_cast<std::size_t>(e.index));
    if (a.name() == kDummyActionName) continue;
    plan.steps.push_back(e.index);
  }
  decision.plan = std::move(plan);
  return decision;
}

}  // namespace bpe
