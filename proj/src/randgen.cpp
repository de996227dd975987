#include "strucctrl/io.hpp"
#include "strucctrl/oracle.hpp"

namespace strucctrl {
namespace {

std::vector<int> random_binary_vector(Rng& rng, int length, std::uint64_t density_billionths) {
  std::vector<int> v(length, 0);
  while (true) {
    bool nonzero = false;
    for (int i = 0; i < length; ++i) {
      v[i] = rng.chance(density_billionths, 1000000000ull) ? 1 : 0;
      nonzero = nonzero || v[i] == 1;
    }
    if (nonzero) return v;  // zero vectors are resampled
  }
}

std::vector<int> random_unit_vector(Rng& rng, int length) {
  std::vector<int> v(length, 0);
  v[rng.below(static_cast<std::uint64_t>(length))] = 1;
  return v;
}

}  // namespace

ParamPair generate_random(int n, int m, int q, double density, std::uint64_t seed, GenMode mode) {
  if (n < 1 || n > 8) throw InputError("generator requires 1 <= n <= 8");
  if (m < 0 || m > 3) throw InputError("generator requires 0 <= m <= 3");
  if (q < 1 || q > 14) throw InputError("generator requires 1 <= q <= 14");
  if (mode == GenMode::Binary && (density <= 0.0 || density > 1.0))
    throw InputError("generator requires density in (0, 1]");

  const auto density_billionths =
      static_cast<std::uint64_t>(density * 1e9 + 0.5);
  Rng rng(seed);
  std::vector<RawTerm> raws;
  raws.reserve(q);
  for (int k = 0; k < q; ++k) {
    RawTerm raw;
    if (mode == GenMode::Unitary) {
      raw.g = random_unit_vector(rng, n);
      raw.h = random_unit_vector(rng, n + m);
    } else {
      raw.g = random_binary_vector(rng, n, density_billionths);
      raw.h = random_binary_vector(rng, n + m, density_billionths);
    }
    raws.push_back(std::move(raw));
  }
  return build_pair(n, m, raws);
}

}  // namespace strucctrl
