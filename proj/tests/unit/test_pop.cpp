#include <doctest.h>

#include "bpe/errors.hpp"
#include "bpe/oracle.hpp"
#include "bpe/pop.hpp"
#include "bpe/reductions.hpp"
#include "support/generators.hpp"

using namespace bpe;

namespace {

constexpr Value u = kUndefined;

// v0 goes 0 -> 1 via `set`, `reset` puts it back to 0.
SasInstance toggle() {
  return SasInstance(1, DomainSpec(2), {Action("set", {u}, {1}), Action("reset", {u}, {0})}, {0},
                     {1});
}

// `both` supplies v0=1 and v1=1; `need` requires both.
SasInstance two_goals() {
  return SasInstance(3, DomainSpec(2),
                     {Action("both", {u, u, u}, {1, 1, u}), Action("need", {1, 1, u}, {u, u, 1})},
                     {0, 0, 0}, {u, u, 1});
}

}  // namespace

TEST_SUITE("pop") {

TEST_CASE("fresh structure") {
  const SasInstance inst = toggle();
  const PlanStructure ps(inst);
  CHECK(ps.num_occurrences() == 2);
  CHECK(ps.precedes(kInitOcc, kGoalOcc));
  CHECK(ps.eff_at(kInitOcc, 0) == 0);
  CHECK(ps.pre_at(kGoalOcc, 0) == 1);
  CHECK(ps.pre_at(kInitOcc, 0) == u);
  CHECK(ps.eff_at(kGoalOcc, 0) == u);
}

TEST_CASE("threats") {
  const SasInstance done(1, DomainSpec(2), {Action("reset", {u}, {0})}, {1}, {1});
  PlanStructure ps(done);
  ps.add_link({kInitOcc, 0, 1, kGoalOcc});
  CHECK(threats(ps).empty());

  const int t = ps.add_occurrence(0);
  const auto found = threats(ps);
  REQUIRE(found.size() == 1);
  CHECK(found[0].threat == t);
  CHECK(found[0].link == CausalLink{kInitOcc, 0, 1, kGoalOcc});

  PlanStructure after = ps;
  after.add_order(kGoalOcc, t);
  CHECK(threats(after).empty());
}

TEST_CASE("open goals and completeness") {
  const SasInstance inst(2, DomainSpec(2), {}, {1, 0}, {1, u});
  PlanStructure ps(inst);
  const auto goals = open_goals(ps);
  REQUIRE(goals.size() == 1);
  CHECK(goals[0] == OpenGoal{kGoalOcc, 0, 1});
  CHECK_FALSE(is_complete(ps));

  ps.add_link({kInitOcc, 0, 1, kGoalOcc});
  CHECK(open_goals(ps).empty());
  CHECK(is_complete(ps));

  const SasInstance free(2, DomainSpec(2), {}, {1, 0}, {u, u});
  CHECK(open_goals(PlanStructure(free)).empty());
  CHECK(is_complete(PlanStructure(free)));

  const SasInstance risky(1, DomainSpec(2), {Action("reset", {u}, {0})}, {1}, {1});
  PlanStructure threatened(risky);
  threatened.add_link({kInitOcc, 0, 1, kGoalOcc});
  threatened.add_occurrence(0);
  CHECK_FALSE(is_complete(threatened));
}

TEST_CASE("links are validated and idempotent") {
  const SasInstance inst = toggle();
  PlanStructure ps(inst);
  CHECK_THROWS_AS(ps.add_link({kInitOcc, 0, 1, kGoalOcc}), StructuralError);
  const int o = ps.add_occurrence(0);
  CHECK(ps.add_link({o, 0, 1, kGoalOcc}));
  CHECK_FALSE(ps.add_link({o, 0, 1, kGoalOcc}));
  CHECK(ps.links().size() == 1);
  CHECK(ps.add_order(o, kGoalOcc));
  CHECK_FALSE(ps.add_order(o, kGoalOcc));
}

TEST_CASE("establish_links per variant") {
  const SasInstance inst = two_goals();
  PlanStructure ps(inst);
  const int both = ps.add_occurrence(0);
  const int need = ps.add_occurrence(1);

  const auto single = establish_links(ps, both, need, {0, 1}, Variant::original);
  CHECK(single.size() == 1);
  const auto batch = establish_links(ps, both, need, {0, 1}, Variant::modified);
  CHECK(batch.size() == 2);

  ps.add_link({both, 1, 1, need});
  const auto rest = establish_links(ps, both, need, {0, 1}, Variant::modified);
  CHECK(rest == establish_links(ps, both, need, {0, 1}, Variant::original));

  CHECK_THROWS_AS(establish_links(ps, need, both, {0, 1}, Variant::original), StructuralError);
}

TEST_CASE("linearize") {
  const SasInstance inst = toggle();
  CHECK(linearize(PlanStructure(inst)).steps.empty());

  PlanStructure chain(inst);
  const int a = chain.add_occurrence(1);
  const int b = chain.add_occurrence(0);
  chain.add_order(kInitOcc, a);
  chain.add_order(a, b);
  chain.add_order(b, kGoalOcc);
  CHECK(linearize(chain).steps == std::vector<int>{1, 0});

  PlanStructure loose(inst);
  loose.add_occurrence(1);
  loose.add_occurrence(0);
  CHECK(linearize(loose).steps == std::vector<int>{1, 0});

  chain.add_order(b, a);
  CHECK_FALSE(is_acyclic(chain));
  CHECK_THROWS_AS(linearize(chain), StructuralError);
}

TEST_CASE("mar_plan examples") {
  const SasInstance done(1, DomainSpec(2), {}, {1}, {1});
  for (Variant v : {Variant::original, Variant::modified}) {
    const MarResult r = mar_plan(done, 0, v);
    REQUIRE(r.structure.has_value());
    CHECK(r.structure->num_occurrences() == 2);
    CHECK(r.stats.nodes >= 1);
  }

  const SasInstance flip(1, DomainSpec(2), {Action("a", {u}, {1})}, {0}, {1});
  for (Variant v : {Variant::original, Variant::modified}) {
    const MarResult r = mar_plan(flip, 1, v);
    REQUIRE(r.structure.has_value());
    CHECK(r.structure->num_occurrences() == 3);
    CHECK(linearize(*r.structure).steps == std::vector<int>{0});
    CHECK_FALSE(mar_plan(flip, 0, v).structure.has_value());
  }

  const ReductionOutput hs = hitting_set_to_planning(HittingSetInstance(3, {{0, 1}, {1, 2}}, 1));
  const MarResult r = mar_plan(hs.instance, hs.k_prime, Variant::original);
  REQUIRE(r.structure.has_value());
  CHECK(linearize(*r.structure).steps == std::vector<int>{1});
  CHECK(bfs_bounded_plan(hs.instance, 1).plan.has_value());
}

TEST_CASE("modified variant is gated on restriction P") {
  const SasInstance twice(1, DomainSpec(2), {Action("a", {u}, {1}), Action("b", {u}, {1})}, {0}, {1});
  CHECK_THROWS_AS(mar_plan(twice, 1, Variant::modified), UnsafeVariantError);
  MarOptions unsafe;
  unsafe.unsafe_modified = true;
  CHECK(mar_plan(twice, 1, Variant::modified, unsafe).structure.has_value());
  CHECK_THROWS_AS(mar_plan(twice, -1, Variant::original), ParameterError);
}

TEST_CASE("node budget") {
  MarOptions tight;
  tight.node_budget = 1;
  CHECK_THROWS_AS(mar_plan(toggle(), 3, Variant::original, tight), ResourceError);
}

TEST_CASE("threat resolution orders a clobbering step") {
  // Goal v0=1 and v1=1; `clear` needs v0=1 and resets it, so it must come
  // before `set`.
  const SasInstance inst(2, DomainSpec(2),
                         {Action("set", {u, u}, {1, u}), Action("clear", {1, u}, {0, 1})}, {1, 0},
                         {1, 1});
  const MarResult r = mar_plan(inst, 2, Variant::original);
  REQUIRE(r.structure.has_value());
  const Plan plan = linearize(*r.structure);
  CHECK(validate_plan(inst, plan));
  CHECK(plan.steps == std::vector<int>{1, 0});
  CHECK(r.stats.max_line5_per_branch >= 1);
}

TEST_CASE("original variant agrees with bfs on random instances") {
  testing::Rng rng(41);
  const testing::InstanceShape shape{1, 4, 2, 2, 5, 0.3, 0.4, 0.5};
  for (int i = 0; i < 300; ++i) {
    const SasInstance inst = testing::random_instance(rng, shape);
    const int k = testing::uniform(rng, 0, 4);
    const MarResult r = mar_plan(inst, k, Variant::original);
    CHECK(r.structure.has_value() == bfs_bounded_plan(inst, k).plan.has_value());
    if (r.structure) {
      CHECK(is_complete(*r.structure));
      CHECK(r.structure->num_occurrences() <= static_cast<std::size_t>(k) + 2);
      for (int j = 0; j < 5; ++j) {
        CHECK(testing::reference_plan_check(inst, testing::random_linearization(rng, *r.structure)));
      }
    }
  }
}

TEST_CASE("identical node counts across padding") {
  // Core: three chained steps; padding variables are irrelevant to the goal.
  auto padded = [](int pad) {
    const auto n = static_cast<std::size_t>(3 + pad);
    auto at = [n](std::vector<Assignment> e) { return PartialState::from_assignments(n, e); };
    std::vector<Action> actions{Action("s0", at({}), at({{0, 1}})), Action("s1", at({{0, 1}}), at({{1, 1}})),
                                Action("s2", at({{1, 1}}), at({{2, 1}}))};
    for (int i = 0; i < pad; ++i) actions.emplace_back("p" + std::to_string(i), at({}), at({{3 + i, 1}}));
    return SasInstance(static_cast<int>(n), DomainSpec(2), std::move(actions),
                       PartialState(std::vector<Value>(n, 0)), at({{0, 1}, {1, 1}, {2, 1}}));
  };
  const auto base = mar_plan(padded(0), 3, Variant::modified).stats.nodes;
  for (int pad : {10, 100, 1000}) CHECK(mar_plan(padded(pad), 3, Variant::modified).stats.nodes == base);
}

}  // TEST_SUITE
