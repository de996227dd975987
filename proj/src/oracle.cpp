#include "strucctrl/oracle.hpp"

namespace strucctrl {

Instantiation instantiate(const ParamPair& pair, const std::vector<Rational>& p) {
  if (static_cast<int>(p.size()) != pair.q())
    throw InputError("parameter vector must have length q = " + std::to_string(pair.q()));

  Instantiation inst;
  inst.n = pair.n;
  inst.m = pair.m;
  inst.A = RationalMatrix(pair.n, pair.n);
  inst.B = RationalMatrix(pair.n, pair.m);
  for (int k = 0; k < pair.q(); ++k) {
    const ParamTerm& term = pair.terms[k];
    const Rational& value = p[k];
    if (value == 0) continue;
    for (int i = 0; i < pair.n; ++i) {
      if (term.g[i] == 0) continue;
      const Rational scaled = value * term.g[i];
      for (int j = 0; j < pair.n; ++j)
        if (term.h[j] != 0) inst.A.at(i, j) += scaled * term.h[j];
      for (int j = 0; j < pair.m; ++j)
        if (term.h[pair.n + j] != 0) inst.B.at(i, j) += scaled * term.h[pair.n + j];
    }
  }
  return inst;
}

int kalman_rank(const Instantiation& inst) {
  RationalMatrix controllability = inst.B;
  RationalMatrix block = inst.B;
  for (int power = 1; power < inst.n; ++power) {
    block = inst.A * block;
    controllability = controllability.horzcat(block);
  }
  return rational_rank(std::move(controllability));
}

Rng::Rng(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ull) {
  // scramble so nearby seeds do not produce nearby streams
  for (int i = 0; i < 4; ++i) next();
}

std::uint64_t Rng::next() {
  // xorshift64*
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1Dull;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // rejection sampling keeps the draw exactly uniform
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return draw % bound;
}

long long Rng::range(long long lo, long long hi) {
  return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool Rng::chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

bool structurally_controllable_randomized(const ParamPair& pair, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("at least one trial is required");
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(seed + 0x51ED2701ull * static_cast<std::uint64_t>(trial));
    std::vector<Rational> p(pair.q());
    for (int k = 0; k < pair.q(); ++k) p[k] = Rational(static_cast<long>(rng.range(-1000000, 1000000)));
    if (kalman_rank(instantiate(pair, p)) == pair.n) return true;
  }
  return false;
}

}  // namespace strucctrl
