#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strucctrl/analysis.hpp"
#include "strucctrl/mcs.hpp"
#include "strucctrl/model.hpp"
#include "strucctrl/reach.hpp"
#include "strucctrl/transfer.hpp"

namespace strucctrl {

// Instance document: {"n":..,"m":..,"terms":[{"p":k,"g":[0/1 x n],"h":[0/1 x n+m]}]}
// or entry form {"n":..,"m":..,"A":[[..]],"B":[[..]]} with each entry a list of
// parameter labels (or a single label, or 0 for a structural zero).
ParamPair parse_instance(const std::string& text);
std::string serialize_instance(const ParamPair& pair);

std::string report_to_text(const AnalysisReport& report, bool use_color);
std::string report_to_json(const AnalysisReport& report);

enum class GenMode { Binary, Unitary };

// Reproducible random instance; unitary mode draws unit g/h, binary mode draws
// Bernoulli(density) vectors and resamples zero vectors. Dependent term sets
// are reduced by build_pair, so the resulting q may be smaller than requested.
ParamPair generate_random(int n, int m, int q, double density, std::uint64_t seed, GenMode mode);

std::string export_dot(const SCGraph& scg);
std::string export_dot(const SCGraph& scg, const MultiColoredSubgraph& subgraph);
std::string export_dot(const CactusDecomposition& decomposition);
std::string export_dot(const TransferGraph& tg);

struct CrosscheckConfig {
  int count = 500;
  int max_n = 6;
  int max_m = 2;
  int max_q = 10;
  std::uint64_t seed = 1;
  GenMode mode = GenMode::Binary;
  // Density range sampled per instance (binary mode).
  double density_min = 0.15;
  double density_max = 0.45;
  int trials = 3;
  EnumLimits limits;
  bool run_property_suites = true;  // parity invariance, det bridge, sign rule, ...
};

// Nonvacuity counters for the property suites.
struct PropertyStats {
  long long checks = 0;
  long long parity_invariance_classes = 0;  // classes with >= 2 members and partitions
  long long det_bridge_coefficients = 0;
  long long cactus_unions_built = 0;
  long long unitary_instances = 0;
};

struct CrosscheckSummary {
  int instances = 0;
  int disagreements = 0;
  int limit_hits = 0;
  PropertyStats stats;
  std::vector<std::string> failures;  // one entry per failed instance/property,
                                      // with the offending instance serialized

  bool ok() const { return disagreements == 0 && limit_hits == 0 && failures.empty(); }
};

// Generates `count` instances, analyzes each under every condition, reports
// verdict disagreements, and (optionally) runs the cross-module property
// suites on each instance plus the randomized matrix-level suites.
CrosscheckSummary crosscheck(const CrosscheckConfig& config);

// Per-instance property checks shared by crosscheck and the acceptance suite.
// Returns human-readable failure descriptions (empty = all hold).
std::vector<std::string> check_instance_properties(const ParamPair& pair, const EnumLimits& limits,
                                                   PropertyStats* stats = nullptr);

// Randomized matrix-level suites.
std::vector<std::string> check_rank_oracle_equivalence(int count, std::uint64_t seed);
std::vector<std::string> check_product_rank_bound(int count, std::uint64_t seed);
std::vector<std::string> check_determinant_sign_rule(int count, std::uint64_t seed);
std::vector<std::string> check_unitary_reduction(int count, std::uint64_t seed);

}  // namespace strucctrl
