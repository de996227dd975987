#include <doctest.h>

#include <set>

#include "instances.hpp"
#include "strucctrl/io.hpp"
#include "strucctrl/mcs.hpp"

using namespace strucctrl;

namespace {

MultiColoredSubgraph make_subgraph(int n, int m, std::vector<Arc> arcs) {
  MultiColoredSubgraph subgraph;
  subgraph.n = n;
  subgraph.m = m;
  std::sort(arcs.begin(), arcs.end());
  subgraph.arcs = std::move(arcs);
  return subgraph;
}

}  // namespace

TEST_CASE("the worked instance has exactly six multi-colored subgraphs") {
  const SCGraph scg = graph_of_pair(testutil::worked_pair());
  const std::vector<MultiColoredSubgraph> subgraphs = enumerate_mcs(scg);
  const std::vector<std::vector<Arc>> expected = {
      {{1, 2, 5}, {3, 3, 3}, {4, 1, 1}, {5, 4, 4}},
      {{1, 2, 5}, {3, 3, 3}, {5, 4, 4}, {6, 1, 1}},
      {{1, 2, 5}, {3, 4, 4}, {4, 3, 3}, {6, 1, 1}},
      {{1, 2, 5}, {4, 3, 3}, {5, 4, 4}, {6, 1, 1}},
      {{3, 3, 3}, {4, 1, 1}, {5, 4, 4}, {6, 2, 2}},
      {{3, 4, 4}, {4, 3, 3}, {5, 2, 2}, {6, 1, 1}},
  };
  REQUIRE(subgraphs.size() == 6);
  for (size_t i = 0; i < 6; ++i) CHECK(subgraphs[i].arcs == expected[i]);
}

TEST_CASE("similarity classes of the worked instance") {
  const SCGraph scg = graph_of_pair(testutil::worked_pair());
  const std::vector<SimilarityClass> classes = similarity_classes(scg, enumerate_mcs(scg));
  REQUIRE(classes.size() == 5);

  CHECK(classes[0].sink_set == std::vector<int>{1, 2});
  CHECK(classes[0].color_set == std::vector<int>{1, 2, 3, 4});
  REQUIRE(classes[0].members.size() == 2);
  CHECK(classes[0].members[0].arcs ==
        std::vector<Arc>{{3, 3, 3}, {4, 1, 1}, {5, 4, 4}, {6, 2, 2}});
  CHECK(classes[0].members[1].arcs ==
        std::vector<Arc>{{3, 4, 4}, {4, 3, 3}, {5, 2, 2}, {6, 1, 1}});
  // one odd and one even member: balanced
  CHECK(classes[0].odd_count == 1);
  CHECK(classes[0].even_count == 1);
  CHECK_FALSE(classes[0].unbalanced());

  for (size_t i = 1; i < 5; ++i) {
    CHECK(classes[i].members.size() == 1);
    CHECK(classes[i].unbalanced());
    CHECK(classes[i].color_set == std::vector<int>{1, 3, 4, 5});
  }
  CHECK(classes[4].sink_set == std::vector<int>{2, 6});
}

TEST_CASE("degenerate enumerations") {
  // a single arc from the input vertex
  const SCGraph single = graph_of_pair(build_pair(1, 1, {{{1}, {0, 1}}}));
  const std::vector<MultiColoredSubgraph> one = enumerate_mcs(single);
  REQUIRE(one.size() == 1);
  CHECK(one[0].arcs == std::vector<Arc>{{2, 1, 1}});

  // one color cannot supply two distinct start vertices
  const SCGraph starved = graph_of_pair(build_pair(2, 1, {{{1, 1}, {1, 0, 0}}}));
  CHECK(enumerate_mcs(starved).empty());
}

TEST_CASE("enumeration limits fail loudly") {
  const SCGraph scg = graph_of_pair(testutil::worked_pair());
  EnumLimits tight;
  tight.max_subgraphs = 3;
  CHECK_THROWS_AS(enumerate_mcs(scg, tight), LimitError);
  EnumLimits small_n;
  small_n.max_n = 3;
  CHECK_THROWS_AS(enumerate_mcs(scg, small_n), LimitError);
  EnumLimits small_q;
  small_q.max_q = 4;
  CHECK_THROWS_AS(enumerate_mcs(scg, small_q), LimitError);
}

TEST_CASE("canonical matrimonial partitions") {
  const SCGraph scg = graph_of_pair(testutil::worked_pair());
  const MatrimonialPartition pi = canonical_matrimonial_partition(scg, {1, 2});
  CHECK(pi.cells == std::vector<std::vector<int>>{{1, 5}, {2, 6}, {3}, {4}});

  const MatrimonialPartition pi2 = canonical_matrimonial_partition(scg, {2, 6});
  CHECK(pi2.cells == std::vector<std::vector<int>>{{1}, {2, 5}, {3}, {4}, {6}});

  CHECK_THROWS_AS(canonical_matrimonial_partition(scg, {1}), std::invalid_argument);

  // when the sinks are exactly the sources every cell is a singleton
  const SCGraph loops = graph_of_pair(build_pair(2, 1,
                                                 {
                                                     {{1, 0}, {1, 0, 0}},
                                                     {{0, 1}, {0, 1, 0}},
                                                 }));
  const MatrimonialPartition singletons = canonical_matrimonial_partition(loops, {3});
  CHECK(singletons.cells == std::vector<std::vector<int>>{{1}, {2}, {3}});
}

TEST_CASE("quotient parity of the two balanced-class members") {
  MatrimonialPartition pi;
  pi.cells = {{1, 5}, {2, 6}, {3}, {4}};

  // two 2-cycles in the quotient
  const MultiColoredSubgraph even_member =
      make_subgraph(4, 2, {{6, 1, 1}, {5, 2, 2}, {4, 3, 3}, {3, 4, 4}});
  CHECK(parity(even_member, pi) == Parity::Even);

  // one 2-cycle and two self-loops
  const MultiColoredSubgraph odd_member =
      make_subgraph(4, 2, {{4, 1, 1}, {6, 2, 2}, {3, 3, 3}, {5, 4, 4}});
  CHECK(parity(odd_member, pi) == Parity::Odd);

  // the other pairing flips both absolute parities but keeps them opposite
  MatrimonialPartition other;
  other.cells = {{1, 6}, {2, 5}, {3}, {4}};
  CHECK(parity(even_member, other) != parity(odd_member, other));

  MatrimonialPartition invalid;
  invalid.cells = {{3, 5}, {2, 6}, {1}, {4}};  // 3 is neither source nor sink
  CHECK_THROWS_AS(parity(even_member, invalid), std::invalid_argument);
}

TEST_CASE("self-loop subgraphs have one cycle per state vertex") {
  const ParamPair loops2 = build_pair(2, 1,
                                      {
                                          {{1, 0}, {1, 0, 0}},
                                          {{0, 1}, {0, 1, 0}},
                                      });
  const std::vector<MultiColoredSubgraph> subgraphs = enumerate_mcs(graph_of_pair(loops2));
  REQUIRE(subgraphs.size() == 1);
  CHECK(parity(subgraphs[0], canonical_matrimonial_partition(graph_of_pair(loops2), {3})) ==
        Parity::Even);
  CHECK(parity_via_permutation_sign(subgraphs[0]) == Parity::Even);

  const ParamPair loops3 = build_pair(3, 1,
                                      {
                                          {{1, 0, 0}, {1, 0, 0, 0}},
                                          {{0, 1, 0}, {0, 1, 0, 0}},
                                          {{0, 0, 1}, {0, 0, 1, 0}},
                                      });
  const std::vector<MultiColoredSubgraph> three = enumerate_mcs(graph_of_pair(loops3));
  REQUIRE(three.size() == 1);
  CHECK(parity_via_permutation_sign(three[0]) == Parity::Odd);
}

TEST_CASE("the two parity routes agree on every member of every class") {
  const SCGraph scg = graph_of_pair(testutil::worked_pair());
  for (const SimilarityClass& sc : similarity_classes(scg, enumerate_mcs(scg))) {
    const MatrimonialPartition pi = canonical_matrimonial_partition(scg, sc.sink_set);
    for (const MultiColoredSubgraph& member : sc.members)
      CHECK(parity(member, pi) == parity_via_permutation_sign(member));
  }
}

TEST_CASE("relative parity is invariant under the partition choice") {
  const SCGraph scg = graph_of_pair(testutil::worked_pair());
  const std::vector<SimilarityClass> classes = similarity_classes(scg, enumerate_mcs(scg));
  const SimilarityClass& balanced = classes[0];  // sinks {1,2}: two unmatched sources
  const std::vector<MatrimonialPartition> partitions =
      all_matrimonial_partitions(scg, balanced.sink_set);
  REQUIRE(partitions.size() == 2);
  for (const MatrimonialPartition& pi : partitions) {
    CHECK(parity(balanced.members[0], pi) != parity(balanced.members[1], pi));
  }
}

TEST_CASE("unbalanced class detection and witness choice") {
  const SCGraph scg = graph_of_pair(testutil::worked_pair());
  const std::optional<SimilarityClass> witness = has_unbalanced_class(scg);
  REQUIRE(witness.has_value());
  CHECK(witness->sink_set == std::vector<int>{2, 6});
  CHECK(witness->color_set == std::vector<int>{1, 3, 4, 5});
  CHECK(witness->members.size() == 1);

  // every class of the rank-deficient instance is balanced
  CHECK_FALSE(has_unbalanced_class(graph_of_pair(testutil::rank_deficient_pair())).has_value());

  // no subgraph at all
  const SCGraph starved = graph_of_pair(build_pair(2, 1, {{{1, 1}, {1, 0, 0}}}));
  CHECK_FALSE(has_unbalanced_class(starved).has_value());
}
