#pragma once

#include <cstdint>
#include <vector>

#include "strucctrl/model.hpp"
#include "strucctrl/rational.hpp"

namespace strucctrl {

struct Instantiation {
  int n = 0;
  int m = 0;
  RationalMatrix A;  // n x n
  RationalMatrix B;  // n x m
};

// Exact realization at the given parameter vector (|p| must equal q).
Instantiation instantiate(const ParamPair& pair, const std::vector<Rational>& p);

// Rank of [B, AB, ..., A^{n-1}B] over the rationals.
int kalman_rank(const Instantiation& inst);

// Deterministic xorshift-based integer sampler so results do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  // Uniform in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  // Uniform integer in [lo, hi].
  long long range(long long lo, long long hi);
  // Bernoulli with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den);

 private:
  std::uint64_t state_;
};

// True iff some trial with p drawn uniformly from [-10^6, 10^6]^q realizes a
// controllable pair. One-sided: "true" is certain, "false" can in principle
// miss a controllable pair (each trial fails only on a measure-zero set).
bool structurally_controllable_randomized(const ParamPair& pair, int trials, std::uint64_t seed);

}  // namespace strucctrl
