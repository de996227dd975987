#include <doctest.h>

#include <fstream>
#include <sstream>

#include "instances.hpp"
#include "strucctrl/analysis.hpp"
#include "strucctrl/io.hpp"

using namespace strucctrl;

namespace {

std::string read_data_file(const std::string& name) {
  std::ifstream in(std::string(STRUCCTRL_DATA_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool same_terms(const ParamPair& a, const ParamPair& b) {
  if (a.n != b.n || a.m != b.m || a.q() != b.q()) return false;
  for (int k = 0; k < a.q(); ++k)
    if (a.terms[k].g != b.terms[k].g || a.terms[k].h != b.terms[k].h) return false;
  return true;
}

}  // namespace

TEST_CASE("parsing the shipped instances") {
  const ParamPair worked = parse_instance(read_data_file("worked_4x2.json"));
  CHECK(same_terms(worked, testutil::worked_pair()));

  const ParamPair deficient = parse_instance(read_data_file("rank_deficient_3x3.json"));
  CHECK(same_terms(deficient, testutil::rank_deficient_pair()));

  // the entry form factors to the very same terms
  const ParamPair entries = parse_instance(read_data_file("rank_deficient_3x3_entries.json"));
  CHECK(same_terms(entries, deficient));
}

TEST_CASE("parse errors carry a usable diagnosis") {
  CHECK_THROWS_WITH_AS(parse_instance("{"), doctest::Contains("syntax error"), InputError);
  CHECK_THROWS_WITH_AS(
      parse_instance(R"({"n":1,"m":1,"terms":[{"p":1,"g":[2],"h":[1,0]}]})"),
      doctest::Contains("non-binary"), InputError);
  CHECK_THROWS_WITH_AS(
      parse_instance(
          R"({"n":1,"m":1,"terms":[{"p":1,"g":[1],"h":[1,0]},{"p":1,"g":[1],"h":[0,1]}]})"),
      doctest::Contains("duplicate color"), InputError);
  CHECK_THROWS_AS(parse_instance(R"({"n":1,"m":1})"), InputError);
  CHECK_THROWS_AS(parse_instance(R"({"n":1,"m":1,"terms":[]})"), InputError);
}

TEST_CASE("serialize then parse is the identity") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const ParamPair pair = generate_random(1 + seed % 6, seed % 3, 1 + seed % 9,
                                           0.2 + 0.05 * (seed % 7), seed * 7, GenMode::Binary);
    CHECK(same_terms(pair, parse_instance(serialize_instance(pair))));
  }
}

TEST_CASE("entry form accepts scalars and lists") {
  const ParamPair a = parse_instance(R"({"n":2,"m":1,
    "A": [[1, [1]], [0, 0]],
    "B": [[[1]], [2]]})");
  CHECK(a.q() == 2);
  CHECK(a.terms[0].g == std::vector<int>{1, 0});
  CHECK(a.terms[0].h == std::vector<int>{1, 1, 1});
  CHECK(a.terms[1].g == std::vector<int>{0, 1});
  CHECK(a.terms[1].h == std::vector<int>{0, 0, 1});
}

TEST_CASE("random generation modes") {
  const ParamPair unitary = generate_random(4, 2, 6, 0.5, 99, GenMode::Unitary);
  for (const ParamTerm& term : unitary.terms) {
    int g_ones = 0, h_ones = 0;
    for (int x : term.g) g_ones += x;
    for (int x : term.h) h_ones += x;
    CHECK(g_ones == 1);
    CHECK(h_ones == 1);
  }

  const ParamPair once = generate_random(3, 2, 8, 0.3, 4242, GenMode::Binary);
  const ParamPair twice = generate_random(3, 2, 8, 0.3, 4242, GenMode::Binary);
  CHECK(same_terms(once, twice));

  // density one: every outer product is the all-ones matrix
  const ParamPair saturated = generate_random(3, 1, 5, 1.0, 7, GenMode::Binary);
  CHECK(saturated.q() == 1);

  CHECK_THROWS_AS(generate_random(9, 1, 5, 0.5, 1, GenMode::Binary), InputError);
  CHECK_THROWS_AS(generate_random(3, 4, 5, 0.5, 1, GenMode::Binary), InputError);
  CHECK_THROWS_AS(generate_random(3, 1, 0, 0.5, 1, GenMode::Binary), InputError);
}

TEST_CASE("analysis of the worked instance agrees everywhere") {
  AnalyzeOptions options;
  options.seed = 5;
  const AnalysisReport report = analyze(testutil::worked_pair(), options);
  CHECK(report.randomized.verdict == Verdict::True);
  CHECK(report.rank_irreducible.verdict == Verdict::True);
  CHECK(report.cactus.verdict == Verdict::True);
  CHECK(report.forest.verdict == Verdict::True);
  CHECK(report.corfmat.verdict == Verdict::True);
  REQUIRE(report.consensus().has_value());
  CHECK(*report.consensus());
  CHECK_FALSE(report.any_limit());
  REQUIRE(report.unbalanced_witness.has_value());
  CHECK(report.unbalanced_witness->sink_set == std::vector<int>{2, 6});
  CHECK(report.unbalanced_witness->color_set == std::vector<int>{1, 3, 4, 5});
  REQUIRE(report.cactus_witness.has_value());
  CHECK(report.transfer_parents.size() == 6);

  const std::string text = report_to_text(report, false);
  CHECK(text.find("structurally controllable") != std::string::npos);
  const std::string json_text = report_to_json(report);
  CHECK(json_text.find("\"verdict\": \"controllable\"") != std::string::npos);
}

TEST_CASE("analysis of the rank-deficient instance is negative everywhere") {
  AnalyzeOptions options;
  options.seed = 5;
  const AnalysisReport report = analyze(testutil::rank_deficient_pair(), options);
  CHECK(report.randomized.verdict == Verdict::False);
  CHECK(report.rank_irreducible.verdict == Verdict::False);
  CHECK(report.cactus.verdict == Verdict::False);
  CHECK(report.forest.verdict == Verdict::False);
  CHECK(report.corfmat.verdict == Verdict::False);
  CHECK(report.rank_irreducible.detail.find("g-rank 2") != std::string::npos);
  REQUIRE(report.consensus().has_value());
  CHECK_FALSE(*report.consensus());
}

TEST_CASE("an unreachable vertex is named in the forest verdict") {
  const ParamPair isolated = build_pair(2, 1, {{{1, 0}, {0, 0, 1}}});
  const AnalysisReport report = analyze(isolated);
  CHECK(report.forest.verdict == Verdict::False);
  CHECK(report.forest.detail.find("unreachable 2") != std::string::npos);
}

TEST_CASE("limits surface as undecided, not as verdicts") {
  AnalyzeOptions options;
  options.limits.max_subgraphs = 2;
  const AnalysisReport report = analyze(testutil::worked_pair(), options);
  CHECK(report.cactus.verdict == Verdict::Undecided);
  CHECK(report.forest.verdict == Verdict::Undecided);
  CHECK(report.any_limit());
  CHECK_FALSE(report.consensus().has_value());
}

TEST_CASE("DOT export") {
  const SCGraph scg = graph_of_pair(testutil::worked_pair());
  const std::string dot = export_dot(scg);
  size_t arrows = 0;
  for (size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 1))
    ++arrows;
  CHECK(arrows == 9);
  CHECK(dot.find("shape=box") != std::string::npos);

  SCGraph empty;
  empty.n = 2;
  empty.m = 1;
  const std::string empty_dot = export_dot(empty);
  CHECK(empty_dot.find("->") == std::string::npos);
  CHECK(empty_dot.find("1;") != std::string::npos);

  const std::string cactus_dot = export_dot(*build_cactus_union(scg));
  CHECK(cactus_dot.find("style=dashed") != std::string::npos);
}

TEST_CASE("a small crosscheck corpus runs clean") {
  CrosscheckConfig config;
  config.count = 25;
  config.seed = 31337;
  const CrosscheckSummary summary = crosscheck(config);
  CHECK(summary.instances == 25);
  CHECK(summary.disagreements == 0);
  CHECK(summary.limit_hits == 0);
  for (const std::string& failure : summary.failures) MESSAGE(failure);
  CHECK(summary.failures.empty());
  CHECK(summary.stats.checks > 0);
}
