#include <doctest.h>

#include "instances.hpp"
#include "strucctrl/oracle.hpp"

using namespace strucctrl;

namespace {

std::vector<Rational> ones(int q) { return std::vector<Rational>(q, Rational(1)); }

}  // namespace

TEST_CASE("instantiation of the worked instance at all-ones") {
  const Instantiation inst = instantiate(testutil::worked_pair(), ones(5));
  const int a_expected[4][4] = {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 0}};
  const int b_expected[4][2] = {{0, 1}, {1, 1}, {0, 0}, {1, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(inst.A.at(i, j) == a_expected[i][j]);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) CHECK(inst.B.at(i, j) == b_expected[i][j]);
}

TEST_CASE("instantiation edge cases") {
  const Instantiation zero = instantiate(testutil::worked_pair(), std::vector<Rational>(5, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(zero.A.at(i, j) == 0);

  // A = [[p1,p1],[0,0]], b = [p1,p2] at p = (2,3)
  const ParamPair pair = build_pair(2, 1, {{{1, 0}, {1, 1, 1}}, {{0, 1}, {0, 0, 1}}});
  const Instantiation inst = instantiate(pair, {Rational(2), Rational(3)});
  CHECK(inst.A.at(0, 0) == 2);
  CHECK(inst.A.at(0, 1) == 2);
  CHECK(inst.A.at(1, 0) == 0);
  CHECK(inst.A.at(1, 1) == 0);
  CHECK(inst.B.at(0, 0) == 2);
  CHECK(inst.B.at(1, 0) == 3);

  CHECK_THROWS_AS(instantiate(pair, ones(3)), InputError);
}

TEST_CASE("controllability matrix rank") {
  // chain integrator A = [[0,1],[0,0]], B = [0,1]^T
  Instantiation chain;
  chain.n = 2;
  chain.m = 1;
  chain.A = RationalMatrix::from_int_rows({{0, 1}, {0, 0}});
  chain.B = RationalMatrix::from_int_rows({{0}, {1}});
  CHECK(kalman_rank(chain) == 2);

  Instantiation null;
  null.n = 2;
  null.m = 1;
  null.A = RationalMatrix(2, 2);
  null.B = RationalMatrix(2, 1);
  CHECK(kalman_rank(null) == 0);

  // the worked instance is controllable at p = (1,2,3,4,5)
  const Instantiation worked = instantiate(
      testutil::worked_pair(),
      {Rational(1), Rational(2), Rational(3), Rational(4), Rational(5)});
  CHECK(kalman_rank(worked) == 4);
}

TEST_CASE("randomized structural-controllability oracle") {
  CHECK(structurally_controllable_randomized(testutil::worked_pair(), 3, 2024));
  CHECK_FALSE(structurally_controllable_randomized(testutil::rank_deficient_pair(), 3, 2024));

  // B identically zero
  const ParamPair no_b = build_pair(1, 1, {{{1}, {1, 0}}});
  CHECK_FALSE(structurally_controllable_randomized(no_b, 5, 99));

  CHECK_THROWS_AS(structurally_controllable_randomized(no_b, 0, 1), InputError);
}

TEST_CASE("deterministic sampler is reproducible and in range") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    const long long x = a.range(-1000000, 1000000);
    CHECK(x == b.range(-1000000, 1000000));
    CHECK(x >= -1000000);
    CHECK(x <= 1000000);
  }
}
