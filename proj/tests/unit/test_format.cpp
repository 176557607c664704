#include <doctest.h>

#include "bpe/errors.hpp"
#include "bpe/format.hpp"
#include "support/generators.hpp"

using namespace bpe;

TEST_SUITE("format") {

TEST_CASE("minimal sas file") {
  const SasInstance inst = parse_sas("sas 1\nvars 1\ndomain 2\ninit 0\ngoal 1\naction a\neff 0=1\nend\n");
  CHECK(inst.num_vars() == 1);
  CHECK(inst.domain().size() == 2);
  REQUIRE(inst.actions().size() == 1);
  CHECK(inst.actions()[0].name() == "a");
  CHECK(inst.actions()[0].eff() == PartialState{1});
  CHECK(inst.actions()[0].pre() == PartialState{kUndefined});
  CHECK(inst.goal() == PartialState{1});
}

TEST_CASE("underscore spells the undefined value") {
  const SasInstance inst = parse_sas("sas 1\nvars 2\ndomain 2\ninit 0 0\ngoal _ 1\n");
  CHECK(inst.goal() == PartialState{kUndefined, 1});
}

TEST_CASE("sas parse errors carry the line") {
  try {
    parse_sas("sas 1\nvars 2\ndomain 2\ninit 0 2\ngoal _ _\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_sas("sas 2\nvars 1\ndomain 2\ninit 0\ngoal _\n"), ParseError);
  CHECK_THROWS_AS(parse_sas("sas 1\nvars 2\ndomain 2\ninit 0\ngoal _ _\n"), ParseError);
  CHECK_THROWS_AS(parse_sas("sas 1\nvars 1\ndomain 2\ninit 0\ngoal _\n"
                            "action a\neff 0=1\nend\naction a\neff 0=0\nend\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_sas("sas 1\nvars 1\ndomain 2\ninit 0\ngoal _\naction a\neff 3=1\nend\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_sas("sas 1\nvars 1\ndomain 2\ninit 0\ngoal _\naction a\neff 0=1\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_sas(""), ParseError);
}

TEST_CASE("canonical serialization") {
  const std::string messy =
      "# comment\nsas 1\n\nvars 2\ndomain 3\ninit  1 0\ngoal _ 2\naction b\neff 1=2 0=0\npre 0=1\nend\n";
  const SasInstance inst = parse_sas(messy);
  const std::string canon = serialize_sas(inst);
  CHECK(canon ==
        "sas 1\nvars 2\ndomain 3\ninit 1 0\ngoal _ 2\naction b\npre 0=1\neff 0=0 1=2\nend\n");
  CHECK(serialize_sas(parse_sas(canon)) == canon);

  const SasInstance bare(3, DomainSpec(2), {}, {0, 0, 0}, PartialState::undefined(3));
  const std::string text = serialize_sas(bare);
  CHECK(text.find("action") == std::string::npos);
  CHECK(text.find("goal _ _ _\n") != std::string::npos);
}

TEST_CASE("hitting set files") {
  const HittingSetInstance hs = parse_hitting_set("hs 3 2 1\n0 1\n1 2\n");
  CHECK(hs.set_size() == 3);
  CHECK(hs.collection() == std::vector<std::vector<int>>{{0, 1}, {1, 2}});
  CHECK(hs.k() == 1);
  CHECK(parse_hitting_set(serialize_hitting_set(hs)) == hs);

  CHECK_THROWS_AS(parse_hitting_set("hs 3 2 1\n0 1\n\n"), ParseError);
  CHECK_THROWS_AS(parse_hitting_set("hs 3 1 2\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_hitting_set("hs 3 1 1\n0 3\n"), ParseError);
  CHECK_THROWS_AS(parse_hitting_set("hs 3 2 1\n0 1\n"), ParseError);
}

TEST_CASE("partitioned graph files") {
  const PartitionedGraph g = parse_partitioned_graph("pc 2 1\n0 0 1 0\n");
  CHECK(g.k() == 2);
  CHECK(g.n() == 1);
  CHECK(g.edges().size() == 1);

  const PartitionedGraph tri = parse_partitioned_graph("pc 3 1\n0 0 1 0\n0 0 2 0\n1 0 2 0\n");
  CHECK(tri.edges().size() == 3);
  CHECK(tri.adjacent({2, 0}, {1, 0}));
  CHECK(parse_partitioned_graph(serialize_partitioned_graph(tri)) == tri);

  CHECK_THROWS_AS(parse_partitioned_graph("pc 2 1\n0 0 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_partitioned_graph("pc 2 1\n0 0 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_partitioned_graph("pc 2\n"), ParseError);
}

TEST_CASE("random round trips") {
  testing::Rng rng(21);
  const testing::InstanceShape shape{0, 6, 2, 5, 6, 0.3, 0.4, 0.5};
  for (int i = 0; i < 300; ++i) {
    const SasInstance inst = testing::random_instance(rng, shape);
    CHECK(parse_sas(serialize_sas(inst)) == inst);
    const HittingSetInstance hs = testing::random_hitting_set(rng, 8, 6, 4);
    CHECK(parse_hitting_set(serialize_hitting_set(hs)) == hs);
    const PartitionedGraph g = testing::random_partitioned_graph(rng, 4, 3, 0.5);
    CHECK(parse_partitioned_graph(serialize_partitioned_graph(g)) == g);
  }
}

TEST_CASE("arbitrary bytes only raise ParseError") {
  testing::Rng rng(22);
  for (int i = 0; i < 2000; ++i) {
    std::string bytes;
    const int len = testing::uniform(rng, 0, 64);
    for (int j = 0; j < len; ++j) bytes.push_back(static_cast<char>(testing::uniform(rng, 0, 255)));
    if (i % 2) bytes = "sas 1\nvars 1\ndomain 2\n" + bytes;
    try {
      parse_sas(bytes);
    } catch (const ParseError&) {
    }
    try {
      parse_hitting_set("hs " + bytes);
    } catch (const ParseError&) {
    }
    try {
      parse_partitioned_graph("pc " + bytes);
    } catch (const ParseError&) {
    }
  }
}

}  // TEST_SUITE
