#include <doctest.h>

#include "instances.hpp"
#include "strucctrl/io.hpp"
#include "strucctrl/reach.hpp"
#include "strucctrl/transfer.hpp"

using namespace strucctrl;

TEST_CASE("transfer graph of the worked instance") {
  const TransferGraph tg = build_transfer_graph(testutil::worked_pair());
  CHECK(tg.q == 5);
  const std::vector<std::pair<int, int>> expected = {{0, 1}, {0, 2}, {0, 4}, {1, 5},
                                                     {3, 3}, {3, 4}, {4, 1}, {4, 3}};
  CHECK(tg.arcs == expected);
  CHECK(transfer_tree_rooted_at_zero(tg));

  const std::vector<int> parents = transfer_tree_parents(tg);
  CHECK(parents[0] == -1);
  CHECK(parents[1] == 0);
  CHECK(parents[2] == 0);
  CHECK(parents[4] == 0);
  CHECK(parents[5] == 1);
  CHECK(parents[3] == 4);
}

TEST_CASE("transfer graph of tiny pairs") {
  // h touches both the state and the input column: arcs (0,1) and (1,1)
  const TransferGraph both = build_transfer_graph(build_pair(1, 1, {{{1}, {1, 1}}}));
  CHECK(both.arcs == std::vector<std::pair<int, int>>{{0, 1}, {1, 1}});
  CHECK(transfer_tree_rooted_at_zero(both));

  // input-only term: no self-block
  const TransferGraph input_only = build_transfer_graph(build_pair(1, 1, {{{1}, {0, 1}}}));
  CHECK(input_only.arcs == std::vector<std::pair<int, int>>{{0, 1}});

  // B identically zero: vertex 0 is isolated
  const TransferGraph no_b = build_transfer_graph(build_pair(1, 1, {{{1}, {1, 0}}}));
  CHECK(no_b.arcs == std::vector<std::pair<int, int>>{{1, 1}});
  CHECK_FALSE(transfer_tree_rooted_at_zero(no_b));
}

TEST_CASE("transfer-route decision procedure") {
  CHECK(corfmat_test(testutil::worked_pair()));
  CHECK_FALSE(corfmat_test(testutil::rank_deficient_pair()));
  // A = [p1], B = [p2]
  CHECK(corfmat_test(build_pair(1, 1, {{{1}, {1, 0}}, {{1}, {0, 1}}})));
}

TEST_CASE("transfer route accepts non-binary integer terms") {
  // same support as the scalar case but with a weight-2 coefficient
  const ParamPair loose = make_pair_unchecked(1, 1, {{{2}, {1, 0}}, {{1}, {0, 1}}});
  CHECK_FALSE(loose.binary());
  CHECK(corfmat_test(loose));
}

TEST_CASE("line graphs") {
  // two-arc chain 2 -> 1 -> 1? use 3 -> 1 -> 2 (colors 1, 2): one length-two walk
  const ParamPair chain = build_pair(2, 1,
                                     {
                                         {{1, 0}, {0, 0, 1}},
                                         {{0, 1}, {1, 0, 0}},
                                     });
  const LineGraph lg = line_graph(graph_of_pair(chain));
  REQUIRE(lg.vertices.size() == 2);
  REQUIRE(lg.arcs.size() == 1);
  CHECK(lg.vertices[lg.arcs[0].first] == Arc{3, 1, 1});
  CHECK(lg.vertices[lg.arcs[0].second] == Arc{1, 2, 2});

  // worked instance: the walk 4 -> 1 -> 2 appears as an arc
  const LineGraph worked = line_graph(graph_of_pair(testutil::worked_pair()));
  bool found = false;
  for (const auto& [from, to] : worked.arcs)
    found = found || (worked.vertices[from] == Arc{4, 1, 1} && worked.vertices[to] == Arc{1, 2, 5});
  CHECK(found);

  // no length-two walk: a single arc
  const LineGraph flat = line_graph(graph_of_pair(build_pair(1, 1, {{{1}, {0, 1}}})));
  CHECK(flat.vertices.size() == 1);
  CHECK(flat.arcs.empty());
}

TEST_CASE("line-graph color quotient is isomorphic to the induced transfer subgraph") {
  CHECK(check_line_quotient_isomorphism(testutil::worked_pair()));
  CHECK(check_line_quotient_isomorphism(testutil::rank_deficient_pair()));
  CHECK(check_line_quotient_isomorphism(build_pair(1, 1, {{{1}, {1, 1}}})));

  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ParamPair pair = generate_random(1 + seed % 6, seed % 3, 1 + seed % 9,
                                           0.2 + 0.05 * (seed % 7), seed * 13, GenMode::Binary);
    CHECK(check_line_quotient_isomorphism(pair));
  }
}

TEST_CASE("irreducible binary pairs have a rooted transfer graph") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ParamPair pair = generate_random(1 + seed % 5, 1 + seed % 2, 1 + seed % 8,
                                           0.25 + 0.05 * (seed % 6), seed * 101, GenMode::Binary);
    if (irreducible_bruteforce(pair))
      CHECK(transfer_tree_rooted_at_zero(build_transfer_graph(pair)));
  }
}
