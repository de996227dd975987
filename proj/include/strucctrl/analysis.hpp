#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strucctrl/mcs.hpp"
#include "strucctrl/model.hpp"
#include "strucctrl/reach.hpp"

namespace strucctrl {

enum class Verdict { True, False, Undecided };

struct ConditionReport {
  bool requested = false;
  Verdict verdict = Verdict::Undecided;
  bool limit_hit = false;
  double millis = 0.0;
  std::string detail;
};

// Verdicts for the four equivalent characterizations plus the transfer-graph
// route. When nothing hits a limit all requested verdicts must agree.
struct AnalysisReport {
  int n = 0, m = 0, q = 0;
  bool binary = true;

  ConditionReport randomized;        // (i)   randomized controllability oracle
  ConditionReport rank_irreducible;  // (ii)  generic rank n + irreducible
  ConditionReport cactus;            // (iii) unbalanced class + cactus union
  ConditionReport forest;            // (iv)  unbalanced class + rooted forest
  ConditionReport corfmat;           // transfer-graph route

  std::optional<SimilarityClass> unbalanced_witness;
  std::optional<CactusDecomposition> cactus_witness;
  std::vector<int> transfer_parents;  // parent map of the rooted spanning tree
  std::vector<std::string> notes;     // discrepancy log, limit messages

  bool any_limit() const;
  // Agreed verdict of the requested, decided conditions; nullopt when any is
  // undecided or they disagree (the latter would falsify the equivalence).
  std::optional<bool> consensus() const;
  std::vector<const ConditionReport*> requested_conditions() const;
};

struct AnalyzeOptions {
  bool run_randomized = true;
  bool run_rank_irreducible = true;
  bool run_cactus = true;
  bool run_forest = true;
  bool run_corfmat = true;
  bool witnesses = true;
  int trials = 3;
  std::uint64_t seed = 12345;
  EnumLimits limits;
};

AnalysisReport analyze(const ParamPair& pair, const AnalyzeOptions& options = {});

}  // namespace strucctrl
