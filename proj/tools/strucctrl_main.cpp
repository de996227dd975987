#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "strucctrl/analysis.hpp"
#include "strucctrl/io.hpp"
#include "strucctrl/rank.hpp"
#include "strucctrl/reach.hpp"
#include "strucctrl/transfer.hpp"

namespace {

constexpr int kExitControllable = 0;
constexpr int kExitNotControllable = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitInputError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw strucctrl::InputError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw strucctrl::InputError("cannot write file: " + path);
  out << text;
}

bool color_allowed() {
  return std::getenv("NO_COLOR") == nullptr;
}

int run_validate(const std::string& file) {
  const strucctrl::ParamPair pair = strucctrl::parse_instance(read_file(file));
  std::cout << "valid instance: n=" << pair.n << " m=" << pair.m << " q=" << pair.q()
            << (pair.binary() ? " (binary)" : " (outside binary class)") << "\n";
  for (const strucctrl::DroppedTerm& dropped : pair.reduction) {
    std::cout << "note: input term " << dropped.input_index + 1
              << " was linearly dependent and has been eliminated\n";
  }
  return kExitControllable;
}

int run_analyze(const std::string& file, const std::vector<std::string>& conditions, bool witness,
                bool json, std::uint64_t seed, int trials, long long max_enum) {
  const strucctrl::ParamPair pair = strucctrl::parse_instance(read_file(file));

  strucctrl::AnalyzeOptions options;
  options.witnesses = witness;
  options.seed = seed;
  options.trials = trials;
  if (max_enum > 0) options.limits.max_subgraphs = max_enum;
  if (!conditions.empty() &&
      std::find(conditions.begin(), conditions.end(), "all") == conditions.end()) {
    options.run_randomized = false;
    options.run_rank_irreducible = false;
    options.run_cactus = false;
    options.run_forest = false;
    options.run_corfmat = false;
    for (const std::string& name : conditions) {
      if (name == "i")
        options.run_randomized = true;
      else if (name == "ii")
        options.run_rank_irreducible = true;
      else if (name == "iii")
        options.run_cactus = true;
      else if (name == "iv")
        options.run_forest = true;
      else if (name == "corfmat")
        options.run_corfmat = true;
      else
        throw strucctrl::InputError("unknown condition: " + name);
    }
  }

  const strucctrl::AnalysisReport report = strucctrl::analyze(pair, options);
  if (json)
    std::cout << strucctrl::report_to_json(report) << "\n";
  else
    std::cout << strucctrl::report_to_text(report, color_allowed());

  if (const std::optional<bool> consensus = report.consensus())
    return *consensus ? kExitControllable : kExitNotControllable;
  return kExitUndecided;
}

int run_enumerate(const std::string& file, long long max_enum) {
  const strucctrl::ParamPair pair = strucctrl::parse_instance(read_file(file));
  strucctrl::EnumLimits limits;
  if (max_enum > 0) limits.max_subgraphs = max_enum;
  const strucctrl::SCGraph scg = strucctrl::graph_of_pair(pair);

  std::vector<strucctrl::MultiColoredSubgraph> subgraphs;
  try {
    subgraphs = strucctrl::enumerate_mcs(scg, limits);
  } catch (const strucctrl::LimitError& limit) {
    std::cerr << "undecided: " << limit.what() << "\n";
    return kExitUndecided;
  }

  std::cout << subgraphs.size() << " multi-colored subgraph(s)\n";
  const std::vector<strucctrl::SimilarityClass> classes =
      strucctrl::similarity_classes(scg, subgraphs);
  std::cout << classes.size() << " similarity class(es)\n";
  for (const strucctrl::SimilarityClass& sc : classes) {
    std::cout << "class sinks {";
    for (size_t i = 0; i < sc.sink_set.size(); ++i) std::cout << (i ? "," : "") << sc.sink_set[i];
    std::cout << "} colors {";
    for (size_t i = 0; i < sc.color_set.size(); ++i)
      std::cout << (i ? "," : "") << sc.color_set[i];
    std::cout << "}: " << sc.members.size() << " member(s), odd " << sc.odd_count << " / even "
              << sc.even_count << (sc.unbalanced() ? " [unbalanced]" : "") << "\n";
    for (const strucctrl::MultiColoredSubgraph& member : sc.members) {
      std::cout << " ";
      for (const strucctrl::Arc& arc : member.arcs)
        std::cout << " (" << arc.from << "," << arc.to << ")_" << arc.color;
      std::cout << "\n";
    }
  }
  return kExitControllable;
}

int run_gen(int n, int m, int q, double density, std::uint64_t seed, const std::string& mode,
            const std::string& output) {
  strucctrl::GenMode gen_mode;
  if (mode == "binary")
    gen_mode = strucctrl::GenMode::Binary;
  else if (mode == "unitary")
    gen_mode = strucctrl::GenMode::Unitary;
  else
    throw strucctrl::InputError("mode must be binary or unitary");
  const strucctrl::ParamPair pair = strucctrl::generate_random(n, m, q, density, seed, gen_mode);
  write_output(output, strucctrl::serialize_instance(pair) + "\n");
  return kExitControllable;
}

int run_crosscheck(int count, int max_n, int max_m, int max_q, std::uint64_t seed,
                   const std::string& mode, bool properties, int trials) {
  strucctrl::CrosscheckConfig config;
  config.count = count;
  config.max_n = max_n;
  config.max_m = max_m;
  config.max_q = max_q;
  config.seed = seed;
  config.trials = trials;
  config.run_property_suites = properties;
  if (mode == "unitary")
    config.mode = strucctrl::GenMode::Unitary;
  else if (mode != "binary")
    throw strucctrl::InputError("mode must be binary or unitary");

  const strucctrl::CrosscheckSummary summary = strucctrl::crosscheck(config);
  std::cout << "instances analyzed: " << summary.instances << "\n"
            << "verdict disagreements: " << summary.disagreements << "\n"
            << "limit hits: " << summary.limit_hits << "\n"
            << "property checks: " << summary.stats.checks << "\n"
            << "  parity-invariance classes exercised: "
            << summary.stats.parity_invariance_classes << "\n"
            << "  determinant-bridge coefficients compared: "
            << summary.stats.det_bridge_coefficients << "\n"
            << "  cactus unions constructed: " << summary.stats.cactus_unions_built << "\n";
  if (summary.stats.unitary_instances > 0)
    std::cout << "  unitary instances: " << summary.stats.unitary_instances << "\n";
  for (const std::string& failure : summary.failures) std::cout << "FAIL " << failure << "\n";
  std::cout << (summary.ok() ? "all checks passed" : "CHECKS FAILED") << "\n";
  return summary.ok() ? kExitControllable : kExitNotControllable;
}

int run_export_dot(const std::string& file, const std::string& what, const std::string& output) {
  const strucctrl::ParamPair pair = strucctrl::parse_instance(read_file(file));
  const strucctrl::SCGraph scg = strucctrl::graph_of_pair(pair);

  std::string text;
  if (what == "graph") {
    text = strucctrl::export_dot(scg);
  } else if (what == "mcs") {
    const std::vector<strucctrl::MultiColoredSubgraph> subgraphs =
        strucctrl::enumerate_mcs(scg, {});
    if (subgraphs.empty()) {
      std::cerr << "the graph has no multi-colored subgraph\n";
      return kExitNotControllable;
    }
    text = strucctrl::export_dot(scg, subgraphs.front());
  } else if (what == "cactus") {
    const std::optional<strucctrl::CactusDecomposition> cacti =
        strucctrl::build_cactus_union(scg, {});
    if (!cacti) {
      std::cerr << "no spanning cactus union exists\n";
      return kExitNotControllable;
    }
    text = strucctrl::export_dot(*cacti);
  } else if (what == "transfer") {
    text = strucctrl::export_dot(strucctrl::build_transfer_graph(pair));
  } else {
    throw strucctrl::InputError("--what must be graph, mcs, cactus or transfer");
  }
  write_output(output, text);
  return kExitControllable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "structural controllability of linearly parameterized matrix pairs "
      "with binary rank-one terms"};
  app.require_subcommand(1);

  std::string file, output, mode = "binary", what = "graph";
  std::vector<std::string> conditions;
  bool witness = false, json = false, no_properties = false;
  std::uint64_t seed = 12345;
  int trials = 3, count = 500, gen_n = 4, gen_m = 2, gen_q = 5;
  int max_n = 6, max_m = 2, max_q = 10;
  long long max_enum = 0;
  double density = 0.3;

  CLI::App* validate = app.add_subcommand("validate", "parse and validate an instance file");
  validate->add_option("file", file)->required();

  CLI::App* analyze = app.add_subcommand("analyze", "decide structural controllability");
  analyze->add_option("file", file)->required();
  analyze->add_option("--condition", conditions,
                      "conditions to run: i, ii, iii, iv, corfmat, all (repeatable)");
  analyze->add_flag("--witness", witness, "include witnesses in the report");
  analyze->add_flag("--json", json, "machine-readable report");
  analyze->add_option("--seed", seed, "seed for the randomized oracle");
  analyze->add_option("--trials", trials, "randomized oracle trials");
  analyze->add_option("--max-enum", max_enum, "subgraph enumeration cap");

  CLI::App* enumerate = app.add_subcommand("enumerate", "list multi-colored subgraphs and classes");
  enumerate->add_option("file", file)->required();
  enumerate->add_option("--max-enum", max_enum, "subgraph enumeration cap");

  CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--n", gen_n, "state dimension (1..8)")->required();
  gen->add_option("--m", gen_m, "input dimension (0..3)")->required();
  gen->add_option("--q", gen_q, "number of terms before reduction (1..14)")->required();
  gen->add_option("--density", density, "Bernoulli density for binary mode");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--mode", mode, "binary or unitary");
  gen->add_option("-o,--output", output, "output file (stdout when omitted)");

  CLI::App* crosscheck = app.add_subcommand(
      "crosscheck", "generate instances and cross-verify every decision route");
  crosscheck->add_option("--count", count, "number of instances");
  crosscheck->add_option("--max-n", max_n, "maximum state dimension");
  crosscheck->add_option("--max-m", max_m, "maximum input dimension");
  crosscheck->add_option("--max-q", max_q, "maximum term count");
  crosscheck->add_option("--seed", seed, "corpus seed");
  crosscheck->add_option("--mode", mode, "binary or unitary");
  crosscheck->add_option("--trials", trials, "randomized oracle trials");
  crosscheck->add_flag("--no-properties", no_properties, "skip the property suites");

  CLI::App* export_dot = app.add_subcommand("export-dot", "render graphs in DOT format");
  export_dot->add_option("file", file)->required();
  export_dot->add_option("--what", what, "graph, mcs, cactus or transfer");
  export_dot->add_option("-o,--output", output, "output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate(file);
    if (analyze->parsed())
      return run_analyze(file, conditions, witness, json, seed, trials, max_enum);
    if (enumerate->parsed()) return run_enumerate(file, max_enum);
    if (gen->parsed()) return run_gen(gen_n, gen_m, gen_q, density, seed, mode, output);
    if (crosscheck->parsed())
      return run_crosscheck(count, max_n, max_m, max_q, seed, mode, !no_properties, trials);
    if (export_dot->parsed()) return run_export_dot(file, what, output);
  } catch (const strucctrl::LimitError& limit) {
    std::cerr << "undecided: " << limit.what() << "\n";
    return kExitUndecided;
  } catch (const strucctrl::InputError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
