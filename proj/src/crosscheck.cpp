#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "strucctrl/analysis.hpp"
#include "strucctrl/io.hpp"
#include "strucctrl/oracle.hpp"
#include "strucctrl/rank.hpp"
#include "strucctrl/transfer.hpp"

namespace strucctrl {
namespace {

bool is_unitary(const ParamPair& pair) {
  for (const ParamTerm& term : pair.terms) {
    auto ones = [](const std::vector<int>& v) {
      int count = 0;
      for (int x : v) {
        if (x != 0 && x != 1) return -1;
        count += x;
      }
      return count;
    };
    if (ones(term.g) != 1 || ones(term.h) != 1) return false;
  }
  return true;
}

std::string one_line(const ParamPair& pair) {
  std::string text = serialize_instance(pair);
  std::string compact;
  compact.reserve(text.size());
  for (char c : text)
    if (c != '\n' && c != ' ') compact.push_back(c);
  return compact;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  return x;
}

std::vector<int> random_nonzero_binary(Rng& rng, int length, std::uint64_t density_billionths) {
  std::vector<int> v(length, 0);
  while (true) {
    bool nonzero = false;
    for (int i = 0; i < length; ++i) {
      v[i] = rng.chance(density_billionths, 1000000000ull) ? 1 : 0;
      nonzero = nonzero || v[i] == 1;
    }
    if (nonzero) return v;
  }
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > 10000000) return result;  // only magnitude matters for gating
  }
  return result;
}

void subsets_of_size(int universe, int size, std::vector<int>& acc,
                     const std::function<void(const std::vector<int>&)>& fn, int start) {
  if (static_cast<int>(acc.size()) == size) {
    fn(acc);
    return;
  }
  for (int v = start; v <= universe - (size - static_cast<int>(acc.size())) + 1; ++v) {
    acc.push_back(v);
    subsets_of_size(universe, size, acc, fn, v + 1);
    acc.pop_back();
  }
}

int rank_of_realization(const Instantiation& inst) {
  return rational_rank(inst.A.horzcat(inst.B));
}

// cycle-graph count of an arc set in which every vertex has in- and out-degree
// at most one (used on determinant terms of square instances)
int cycle_graph_count(int n, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<int> next(n + 1, 0);
  for (const auto& [from, to] : arcs) next[from] = to;
  std::vector<bool> visited(n + 1, false);
  int cycles = 0;
  for (int v = 1; v <= n; ++v) {
    if (visited[v] || next[v] == 0) continue;
    // walk until revisit; the structures checked here are unions of cycles
    int w = v;
    while (!visited[w]) {
      visited[w] = true;
      w = next[w];
    }
    if (w == v) ++cycles;
  }
  return cycles;
}

}  // namespace

std::vector<std::string> check_instance_properties(const ParamPair& pair, const EnumLimits& limits,
                                                   PropertyStats* stats) {
  std::vector<std::string> failures;
  PropertyStats local;
  PropertyStats& counted = stats ? *stats : local;
  auto fail = [&](const std::string& what) { failures.push_back(what + " | " + one_line(pair)); };
  auto check = [&](bool condition, const char* what) {
    ++counted.checks;
    if (!condition) fail(what);
  };

  if (!pair.binary()) return failures;
  const SCGraph scg = graph_of_pair(pair);

  // model round trip and graph validity
  check(validate_scg(scg).ok(), "graph of the pair violates the graph properties");
  {
    const ParamPair back = pair_of_graph(scg);
    bool same = back.q() == pair.q();
    for (int k = 0; same && k < pair.q(); ++k)
      same = back.terms[k].g == pair.terms[k].g && back.terms[k].h == pair.terms[k].h;
    check(same, "pair -> graph -> pair round trip changed the terms");
  }
  if (pair.n <= 5) check(verify_multilinear_minors(pair, pair.n), "a minor is not multilinear");

  // enumeration: parallel kernel vs serial reference vs naive filter
  std::vector<MultiColoredSubgraph> subgraphs;
  try {
    subgraphs = enumerate_mcs(scg, limits);
  } catch (const LimitError&) {
    return failures;  // callers count limit hits separately
  }
  {
    const std::vector<MultiColoredSubgraph> serial = enumerate_mcs_serial(scg, limits);
    bool same = serial.size() == subgraphs.size();
    for (size_t i = 0; same && i < serial.size(); ++i) same = serial[i].arcs == subgraphs[i].arcs;
    check(same, "parallel and serial enumeration disagree");
  }
  if (binomial(static_cast<int>(scg.arcs.size()), scg.n) <= 100000) {
    std::set<std::vector<Arc>> naive;
    std::vector<int> acc;
    subsets_of_size(
        static_cast<int>(scg.arcs.size()), scg.n, acc,
        [&](const std::vector<int>& picked) {
          std::set<int> colors, starts, ends;
          std::vector<Arc> arcs;
          for (int idx : picked) {
            const Arc& arc = scg.arcs[idx - 1];
            colors.insert(arc.color);
            starts.insert(arc.from);
            ends.insert(arc.to);
            arcs.push_back(arc);
          }
          if (static_cast<int>(colors.size()) == scg.n &&
              static_cast<int>(starts.size()) == scg.n && static_cast<int>(ends.size()) == scg.n)
            naive.insert(arcs);
        },
        1);
    std::set<std::vector<Arc>> enumerated;
    for (const MultiColoredSubgraph& subgraph : subgraphs) enumerated.insert(subgraph.arcs);
    check(naive == enumerated, "enumeration differs from the naive n-subset filter");
  }
  {
    std::vector<int> inputs;
    for (int v = scg.n + 1; v <= scg.vertex_count(); ++v) inputs.push_back(v);
    for (const MultiColoredSubgraph& subgraph : subgraphs)
      check(subgraph.source_set() == inputs, "subgraph sources are not the input vertices");
  }

  // similarity classes: partition-independence of relative parity and balance,
  // and agreement of the two parity routes
  const std::vector<SimilarityClass> classes = similarity_classes(scg, subgraphs);
  for (const SimilarityClass& sc : classes) {
    const std::vector<MatrimonialPartition> partitions =
        all_matrimonial_partitions(scg, sc.sink_set);
    for (const MultiColoredSubgraph& member : sc.members) {
      check(parity(member, canonical_matrimonial_partition(scg, sc.sink_set)) ==
                parity_via_permutation_sign(member),
            "quotient parity disagrees with the permutation-sign parity");
    }
    if (sc.members.size() >= 2 && partitions.size() >= 2) {
      ++counted.parity_invariance_classes;
      std::vector<std::vector<bool>> relative;  // per partition: member parity == member-0 parity
      std::vector<bool> balance;
      for (const MatrimonialPartition& partition : partitions) {
        std::vector<bool> row;
        int odd = 0;
        const Parity base = parity(sc.members.front(), partition);
        for (const MultiColoredSubgraph& member : sc.members) {
          const Parity p = parity(member, partition);
          row.push_back(p == base);
          if (p == Parity::Odd) ++odd;
        }
        relative.push_back(std::move(row));
        balance.push_back(2 * odd == static_cast<int>(sc.members.size()));
      }
      for (size_t i = 1; i < relative.size(); ++i) {
        check(relative[i] == relative.front(),
              "relative parities changed under a different matrimonial partition");
        check(balance[i] == balance.front(),
              "class balance changed under a different matrimonial partition");
      }
    }
  }

  // determinant bridge: for every deleted-column set, |coefficient| equals the
  // class imbalance, and the two expansion routes agree
  if (pair.n <= 6) {
    std::map<std::vector<int>, std::map<std::uint32_t, int>> imbalance_by_sinks;
    for (const SimilarityClass& sc : classes) {
      std::uint32_t mask = 0;
      for (int color : sc.color_set) mask |= 1u << (color - 1);
      imbalance_by_sinks[sc.sink_set][mask] = std::abs(sc.even_count - sc.odd_count);
    }
    std::vector<int> acc;
    subsets_of_size(
        pair.n + pair.m, pair.m, acc,
        [&](const std::vector<int>& deleted) {
          const MultilinearPoly poly = symbolic_det(pair, deleted);
          // route agreement
          std::map<std::uint32_t, long long> from_terms;
          for (const DetTerm& term : symbolic_det_terms(pair, deleted)) {
            std::uint32_t mask = 0;
            for (int color : term.colors) mask |= 1u << (color - 1);
            from_terms[mask] += term.sign;
          }
          std::erase_if(from_terms, [](const auto& kv) { return kv.second == 0; });
          check(from_terms == std::map<std::uint32_t, long long>(poly.coeff.begin(),
                                                                 poly.coeff.end()),
                "memoized expansion disagrees with term enumeration");
          // bridge to the class imbalances
          const auto found = imbalance_by_sinks.find(deleted);
          std::map<std::uint32_t, int> expected;
          if (found != imbalance_by_sinks.end()) expected = found->second;
          std::set<std::uint32_t> keys;
          for (const auto& [mask, coeff] : poly.coeff) keys.insert(mask);
          for (const auto& [mask, value] : expected) keys.insert(mask);
          for (std::uint32_t mask : keys) {
            const auto pc = poly.coeff.find(mask);
            const long long coeff = pc == poly.coeff.end() ? 0 : pc->second;
            const auto ic = expected.find(mask);
            const int imbalance = ic == expected.end() ? 0 : ic->second;
            ++counted.det_bridge_coefficients;
            check(std::abs(coeff) == imbalance,
                  "determinant coefficient does not match the class imbalance");
          }
        },
        1);
  }

  // the two generic-rank routes
  const int rank_matroid = generic_rank_matroid(pair);
  check(rank_matroid == generic_rank_minform(pair),
        "matroid-intersection rank disagrees with the subset-minimum formula");

  // irreducibility vs rooted forest
  std::vector<int> roots;
  for (int v = pair.n + 1; v <= pair.n + pair.m; ++v) roots.push_back(v);
  const bool forest = spanning_forest_rooted(scg, roots);
  check(irreducible_bruteforce(pair) == forest,
        "irreducibility brute force disagrees with the rooted-forest test");

  // constructive cactus union
  const std::optional<CactusDecomposition> cacti = build_cactus_union(scg, limits);
  check(cacti.has_value() == (forest && !subgraphs.empty()),
        "cactus construction does not match forest + subgraph existence");
  if (cacti) {
    ++counted.cactus_unions_built;
    check(validate_cactus_union(*cacti, scg), "constructed cactus union fails validation");
  }

  // transfer graph: irreducible implies rooted, and the line-graph quotient is
  // isomorphic to the induced transfer subgraph
  if (forest)
    check(transfer_tree_rooted_at_zero(build_transfer_graph(pair)),
          "irreducible pair whose transfer graph is not rooted at 0");
  check(check_line_quotient_isomorphism(pair), "line-graph color quotient mismatch");

  // full controllable realization implies full [A B] rank at the same point
  {
    Rng rng(mix(0x5eedULL + pair.q(), pair.n * 131 + pair.m));
    std::vector<Rational> p(pair.q());
    for (int k = 0; k < pair.q(); ++k) p[k] = Rational(static_cast<long>(rng.range(-1000000, 1000000)));
    const Instantiation inst = instantiate(pair, p);
    if (kalman_rank(inst) == pair.n)
      check(rank_of_realization(inst) == pair.n,
            "controllable realization with rank-deficient [A B]");
  }

  // unitary pairs: matching-based route and the classical verdict
  if (is_unitary(pair)) {
    ++counted.unitary_instances;
    const bool rank_full = rank_matroid == pair.n;
    const bool matching_full = nonstandard_max_matching(scg) == pair.n;
    const bool has_subgraph = !subgraphs.empty();
    check(matching_full == rank_full, "matching size and generic rank disagree (unitary)");
    check(has_subgraph == rank_full, "subgraph existence and generic rank disagree (unitary)");
    bool unbalanced = false;
    for (const SimilarityClass& sc : classes) unbalanced = unbalanced || sc.unbalanced();
    check(unbalanced == has_subgraph,
          "unitary pair with subgraphs but no unbalanced class (or vice versa)");
    check((unbalanced && forest) == (forest && has_subgraph) &&
              (forest && has_subgraph) == cacti.has_value(),
          "theorem verdict differs from the classical forest + subgraph verdict (unitary)");
  }

  return failures;
}

std::vector<std::string> check_rank_oracle_equivalence(int count, std::uint64_t seed) {
  std::vector<std::string> failures;
  for (int t = 0; t < count; ++t) {
    Rng rng(mix(seed, t));
    const int n = 1 + static_cast<int>(rng.below(5));
    const int m = static_cast<int>(rng.below(3));
    const int q = 1 + static_cast<int>(rng.below(8));
    const std::uint64_t density = 200000000ull + rng.below(500000000ull);
    std::vector<RawTerm> raws(q);
    for (RawTerm& raw : raws) {
      raw.g = random_nonzero_binary(rng, n, density);
      raw.h = random_nonzero_binary(rng, n + m, density);
    }
    // deliberately unreduced: both formulas must handle dependent term sets
    const ParamPair pair = make_pair_unchecked(n, m, raws);

    const int via_matroid = generic_rank_matroid(pair);
    const int via_minimum = generic_rank_minform(pair);
    int numeric = 0;
    for (int draw = 0; draw < 3; ++draw) {
      std::vector<Rational> p(q);
      for (int k = 0; k < q; ++k) p[k] = Rational(static_cast<long>(rng.range(-1000000, 1000000)));
      numeric = std::max(numeric, rank_of_realization(instantiate(pair, p)));
    }
    if (via_matroid != via_minimum || via_matroid != numeric) {
      std::ostringstream msg;
      msg << "generic-rank routes disagree: matroid " << via_matroid << ", subset minimum "
          << via_minimum << ", numeric " << numeric << " | " << one_line(pair);
      failures.push_back(msg.str());
    }
  }
  return failures;
}

std::vector<std::string> check_product_rank_bound(int count, std::uint64_t seed) {
  std::vector<std::string> failures;
  for (int t = 0; t < count; ++t) {
    Rng rng(mix(seed ^ 0xC0FFEEull, t));
    const int rows = 1 + static_cast<int>(rng.below(6));
    const int inner = 1 + static_cast<int>(rng.below(6));
    const int cols = 1 + static_cast<int>(rng.below(6));
    RationalMatrix G(rows, inner), H(inner, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < inner; ++j) G.at(i, j) = static_cast<int>(rng.below(2));
    for (int i = 0; i < inner; ++i)
      for (int j = 0; j < cols; ++j) H.at(i, j) = static_cast<int>(rng.below(2));

    const int bound = joint_independence_bound(G, H);
    const int product_rank = rational_rank(G * H);
    const int min_rank = std::min(rational_rank(G), rational_rank(H));
    if (!(product_rank <= bound && bound <= min_rank)) {
      std::ostringstream msg;
      msg << "product rank bound violated: rank(GH) " << product_rank << ", bound " << bound
          << ", min rank " << min_rank;
      failures.push_back(msg.str());
    }
  }
  return failures;
}

std::vector<std::string> check_determinant_sign_rule(int count, std::uint64_t seed) {
  std::vector<std::string> failures;
  for (int t = 0; t < count; ++t) {
    Rng rng(mix(seed ^ 0x51417Eull, t));
    const int n = 1 + static_cast<int>(rng.below(6));
    const int q = 1 + static_cast<int>(rng.below(8));
    const std::uint64_t density = 250000000ull + rng.below(400000000ull);
    std::vector<RawTerm> raws(q);
    for (RawTerm& raw : raws) {
      raw.g = random_nonzero_binary(rng, n, density);
      raw.h = random_nonzero_binary(rng, n, density);  // square: m = 0
    }
    const ParamPair pair = build_pair(n, 0, raws);

    for (const DetTerm& term : symbolic_det_terms(pair, {})) {
      std::vector<std::pair<int, int>> arcs;
      for (int i = 0; i < n; ++i) arcs.push_back({term.col_of_row[i], i + 1});
      const int cycles = cycle_graph_count(n, arcs);
      const int expected = ((n - cycles) % 2 == 0) ? 1 : -1;
      if (term.sign != expected) {
        std::ostringstream msg;
        msg << "sign rule violated: signature " << term.sign << " but " << cycles
            << " cycle graphs on n=" << n << " | " << one_line(pair);
        failures.push_back(msg.str());
        break;
      }
    }
  }
  return failures;
}

std::vector<std::string> check_unitary_reduction(int count, std::uint64_t seed) {
  std::vector<std::string> failures;
  PropertyStats stats;
  for (int t = 0; t < count; ++t) {
    Rng rng(mix(seed ^ 0x0117A47ull, t));
    const int n = 1 + static_cast<int>(rng.below(6));
    const int m = 1 + static_cast<int>(rng.below(2));
    const int q = 1 + static_cast<int>(rng.below(10));
    const ParamPair pair = generate_random(n, m, q, 0.5, rng.next(), GenMode::Unitary);
    const std::vector<std::string> found = check_instance_properties(pair, EnumLimits{}, &stats);
    failures.insert(failures.end(), found.begin(), found.end());
  }
  if (stats.unitary_instances < count)
    failures.push_back("unitary generator produced non-unitary instances");
  return failures;
}

CrosscheckSummary crosscheck(const CrosscheckConfig& config) {
  if (config.count < 0) throw InputError("crosscheck count must be nonnegative");
  if (config.max_n < 1 || config.max_n > 8) throw InputError("crosscheck requires 1 <= max-n <= 8");
  if (config.max_m < 0 || config.max_m > 3) throw InputError("crosscheck requires 0 <= max-m <= 3");
  if (config.max_q < 1 || config.max_q > 14)
    throw InputError("crosscheck requires 1 <= max-q <= 14");
  if (config.density_min <= 0.0 || config.density_max > 1.0 ||
      config.density_min > config.density_max)
    throw InputError("crosscheck requires 0 < density-min <= density-max <= 1");

  struct Draw {
    int n, m, q;
    double density;
    std::uint64_t seed;
  };
  Rng rng(config.seed);
  std::vector<Draw> draws(config.count);
  for (Draw& draw : draws) {
    draw.n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(config.max_n)));
    draw.m = config.max_m > 0
                 ? 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(config.max_m)))
                 : 0;
    draw.q = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(config.max_q)));
    draw.density = config.density_min + (config.density_max - config.density_min) *
                                            static_cast<double>(rng.below(1000000)) / 1000000.0;
    draw.seed = rng.next();
  }

  struct InstanceOutcome {
    bool limit_hit = false;
    std::vector<std::string> failures;
    PropertyStats stats;
  };
  std::vector<InstanceOutcome> outcomes(config.count);

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < config.count; ++i) {
    const Draw& draw = draws[i];
    InstanceOutcome& outcome = outcomes[i];
    const ParamPair pair =
        generate_random(draw.n, draw.m, draw.q, draw.density, draw.seed, config.mode);

    AnalyzeOptions options;
    options.limits = config.limits;
    options.trials = config.trials;
    options.seed = mix(draw.seed, 0xA11CE);
    options.witnesses = false;
    const AnalysisReport report = analyze(pair, options);

    if (report.any_limit()) {
      outcome.limit_hit = true;
    } else if (!report.consensus()) {
      std::ostringstream msg;
      msg << "verdict disagreement:";
      const char* names[] = {"i", "ii", "iii", "iv", "corfmat"};
      const ConditionReport* conditions[] = {&report.randomized, &report.rank_irreducible,
                                             &report.cactus, &report.forest, &report.corfmat};
      for (int c = 0; c < 5; ++c)
        msg << " (" << names[c] << ")="
            << (conditions[c]->verdict == Verdict::True
                    ? "true"
                    : conditions[c]->verdict == Verdict::False ? "false" : "undecided");
      msg << " | " << one_line(pair);
      outcome.failures.push_back(msg.str());
    }

    if (config.run_property_suites) {
      const std::vector<std::string> found =
          check_instance_properties(pair, config.limits, &outcome.stats);
      outcome.failures.insert(outcome.failures.end(), found.begin(), found.end());
    }
  }

  CrosscheckSummary summary;
  summary.instances = config.count;
  for (const InstanceOutcome& outcome : outcomes) {
    if (outcome.limit_hit) ++summary.limit_hits;
    for (const std::string& failure : outcome.failures) {
      if (failure.rfind("verdict disagreement", 0) == 0) ++summary.disagreements;
      summary.failures.push_back(failure);
    }
    summary.stats.checks += outcome.stats.checks;
    summary.stats.parity_invariance_classes += outcome.stats.parity_invariance_classes;
    summary.stats.det_bridge_coefficients += outcome.stats.det_bridge_coefficients;
    summary.stats.cactus_unions_built += outcome.stats.cactus_unions_built;
    summary.stats.unitary_instances += outcome.stats.unitary_instances;
  }

  if (config.run_property_suites) {
    for (auto& suite : {check_rank_oracle_equivalence(config.count, mix(config.seed, 1)),
                        check_product_rank_bound(config.count, mix(config.seed, 2)),
                        check_determinant_sign_rule(config.count, mix(config.seed, 3))}) {
      summary.failures.insert(summary.failures.end(), suite.begin(), suite.end());
      summary.stats.checks += static_cast<long long>(config.count);
    }
  }
  return summary;
}

}  // namespace strucctrl
