#include "strucctrl/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace strucctrl {
namespace {

using nlohmann::json;

std::vector<int> parse_binary_vector(const json& array, const char* name, size_t expected,
                                     int term_label) {
  if (!array.is_array())
    throw InputError("term p=" + std::to_string(term_label) + ": " + name + " must be an array");
  if (array.size() != expected)
    throw InputError("term p=" + std::to_string(term_label) + ": " + name + " must have " +
                     std::to_string(expected) + " entries");
  std::vector<int> out;
  out.reserve(array.size());
  for (const json& entry : array) {
    if (!entry.is_number_integer() || (entry != 0 && entry != 1))
      throw InputError("term p=" + std::to_string(term_label) + ": non-binary term (" + name +
                       " entries must be 0 or 1)");
    out.push_back(entry.get<int>());
  }
  return out;
}

std::vector<int> parse_entry_cell(const json& cell, int row, int column) {
  std::vector<int> labels;
  auto reject = [&]() {
    throw InputError("entry (" + std::to_string(row) + "," + std::to_string(column) +
                     "): entries must be 0, a parameter label, or a list of labels");
  };
  if (cell.is_number_integer()) {
    const int label = cell.get<int>();
    if (label < 0) reject();
    if (label > 0) labels.push_back(label);
  } else if (cell.is_array()) {
    for (const json& v : cell) {
      if (!v.is_number_integer() || v.get<int>() < 1) reject();
      labels.push_back(v.get<int>());
    }
  } else {
    reject();
  }
  return labels;
}

int require_dimension(const json& doc, const char* name, int lo, int hi) {
  if (!doc.contains(name) || !doc[name].is_number_integer())
    throw InputError(std::string("missing integer field \"") + name + "\"");
  const int value = doc[name].get<int>();
  if (value < lo || value > hi)
    throw InputError(std::string("field \"") + name + "\" out of range [" + std::to_string(lo) +
                     ", " + std::to_string(hi) + "]");
  return value;
}

const char* verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::True:
      return "true";
    case Verdict::False:
      return "false";
    default:
      return "undecided";
  }
}

json condition_json(const ConditionReport& report) {
  json out;
  out["requested"] = report.requested;
  out["verdict"] = verdict_name(report.verdict);
  out["limit_hit"] = report.limit_hit;
  out["time_ms"] = report.millis;
  out["detail"] = report.detail;
  return out;
}

json arcs_json(const std::vector<Arc>& arcs) {
  json out = json::array();
  for (const Arc& arc : arcs) out.push_back({arc.from, arc.to, arc.color});
  return out;
}

}  // namespace

ParamPair parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& error) {
    throw InputError(std::string("syntax error: ") + error.what());
  }
  if (!doc.is_object()) throw InputError("instance must be a JSON object");

  const int n = require_dimension(doc, "n", 1, 64);
  const int m = require_dimension(doc, "m", 0, 64);

  if (doc.contains("terms")) {
    if (!doc["terms"].is_array()) throw InputError("\"terms\" must be an array");
    // keep terms ordered by their label; labels must be distinct
    std::vector<std::pair<int, RawTerm>> labeled;
    for (const json& term : doc["terms"]) {
      if (!term.is_object() || !term.contains("p") || !term["p"].is_number_integer())
        throw InputError("each term needs an integer label \"p\"");
      const int label = term["p"].get<int>();
      if (label < 1) throw InputError("term labels must be positive integers");
      RawTerm raw;
      raw.g = parse_binary_vector(term.value("g", json::array()), "g", n, label);
      raw.h = parse_binary_vector(term.value("h", json::array()), "h", n + m, label);
      labeled.emplace_back(label, std::move(raw));
    }
    std::stable_sort(labeled.begin(), labeled.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 1; i < labeled.size(); ++i)
      if (labeled[i].first == labeled[i - 1].first)
        throw InputError("duplicate color label p=" + std::to_string(labeled[i].first));
    std::vector<RawTerm> raws;
    raws.reserve(labeled.size());
    for (auto& [label, raw] : labeled) raws.push_back(std::move(raw));
    return build_pair(n, m, raws);
  }

  if (doc.contains("A") || doc.contains("B")) {
    const json a = doc.value("A", json::array());
    const json b = doc.value("B", json::array());
    if (!a.is_array() || static_cast<int>(a.size()) != n)
      throw InputError("\"A\" must be an n x n matrix of entries");
    if (m > 0 && (!b.is_array() || static_cast<int>(b.size()) != n))
      throw InputError("\"B\" must be an n x m matrix of entries");
    EntryMatrix entries(n, std::vector<std::vector<int>>(n + m));
    for (int i = 0; i < n; ++i) {
      if (!a[i].is_array() || static_cast<int>(a[i].size()) != n)
        throw InputError("\"A\" row " + std::to_string(i + 1) + " must have n entries");
      for (int j = 0; j < n; ++j) entries[i][j] = parse_entry_cell(a[i][j], i + 1, j + 1);
      if (m > 0) {
        if (!b[i].is_array() || static_cast<int>(b[i].size()) != m)
          throw InputError("\"B\" row " + std::to_string(i + 1) + " must have m entries");
        for (int j = 0; j < m; ++j)
          entries[i][n + j] = parse_entry_cell(b[i][j], i + 1, n + j + 1);
      }
    }
    return pair_of_entry_matrix(n, m, entries);
  }

  throw InputError("instance needs either a \"terms\" array or \"A\"/\"B\" entry matrices");
}

std::string serialize_instance(const ParamPair& pair) {
  json doc;
  doc["n"] = pair.n;
  doc["m"] = pair.m;
  doc["terms"] = json::array();
  for (const ParamTerm& term : pair.terms) {
    json t;
    t["p"] = term.color;
    t["g"] = term.g;
    t["h"] = term.h;
    doc["terms"].push_back(std::move(t));
  }
  return doc.dump(2);
}

std::string report_to_text(const AnalysisReport& report, bool use_color) {
  const char* green = use_color ? "\033[32m" : "";
  const char* red = use_color ? "\033[31m" : "";
  const char* yellow = use_color ? "\033[33m" : "";
  const char* reset = use_color ? "\033[0m" : "";

  auto paint = [&](Verdict verdict) {
    switch (verdict) {
      case Verdict::True:
        return std::string(green) + "true " + reset;
      case Verdict::False:
        return std::string(red) + "false" + reset;
      default:
        return std::string(yellow) + "undecided" + reset;
    }
  };

  std::ostringstream out;
  out << "instance: n=" << report.n << " m=" << report.m << " q=" << report.q
      << (report.binary ? " (binary)" : " (outside binary class)") << "\n";

  const std::pair<const char*, const ConditionReport*> rows[] = {
      {"(i)    randomized oracle    ", &report.randomized},
      {"(ii)   g-rank + irreducible ", &report.rank_irreducible},
      {"(iii)  unbalanced + cactus  ", &report.cactus},
      {"(iv)   unbalanced + forest  ", &report.forest},
      {"corfmat transfer route      ", &report.corfmat},
  };
  for (const auto& [label, condition] : rows) {
    if (!condition->requested) continue;
    out << "  " << label << " " << paint(condition->verdict);
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%9.2f ms", condition->millis);
    out << buffer;
    if (!condition->detail.empty()) out << "  " << condition->detail;
    if (condition->limit_hit) out << "  [limit]";
    out << "\n";
  }

  if (const std::optional<bool> consensus = report.consensus()) {
    out << "verdict: " << (*consensus ? "structurally controllable" : "not structurally controllable")
        << "\n";
  } else {
    out << "verdict: undecided\n";
  }

  if (report.unbalanced_witness) {
    const SimilarityClass& sc = *report.unbalanced_witness;
    out << "witness class: sinks {";
    for (size_t i = 0; i < sc.sink_set.size(); ++i) out << (i ? "," : "") << sc.sink_set[i];
    out << "} colors {";
    for (size_t i = 0; i < sc.color_set.size(); ++i) out << (i ? "," : "") << sc.color_set[i];
    out << "} odd " << sc.odd_count << " / even " << sc.even_count << "\n";
    for (const MultiColoredSubgraph& member : sc.members) {
      out << "  member:";
      for (const Arc& arc : member.arcs)
        out << " (" << arc.from << "," << arc.to << ")_" << arc.color;
      out << "\n";
    }
  }
  if (report.cactus_witness) {
    out << "cactus union:\n";
    for (const Cactus& cactus : report.cactus_witness->cacti) {
      out << "  root " << cactus.root << ", trunk";
      if (cactus.trunk.empty()) out << " (single vertex)";
      for (const Arc& arc : cactus.trunk)
        out << " (" << arc.from << "," << arc.to << ")_" << arc.color;
      for (const Bud& bud : cactus.buds) {
        out << ", bud stem (" << bud.stem.from << "," << bud.stem.to << ")_" << bud.stem.color
            << " cycle";
        for (const Arc& arc : bud.cycle)
          out << " (" << arc.from << "," << arc.to << ")_" << arc.color;
      }
      out << "\n";
    }
  }
  if (!report.transfer_parents.empty()) {
    out << "transfer tree parents:";
    for (size_t v = 1; v < report.transfer_parents.size(); ++v)
      out << " " << v << "<-" << report.transfer_parents[v];
    out << "\n";
  }
  for (const std::string& note : report.notes) out << "note: " << note << "\n";
  return out.str();
}

std::string report_to_json(const AnalysisReport& report) {
  json doc;
  doc["n"] = report.n;
  doc["m"] = report.m;
  doc["q"] = report.q;
  doc["binary"] = report.binary;
  doc["conditions"]["i"] = condition_json(report.randomized);
  doc["conditions"]["ii"] = condition_json(report.rank_irreducible);
  doc["conditions"]["iii"] = condition_json(report.cactus);
  doc["conditions"]["iv"] = condition_json(report.forest);
  doc["conditions"]["corfmat"] = condition_json(report.corfmat);

  if (const std::optional<bool> consensus = report.consensus()) {
    doc["verdict"] = *consensus ? "controllable" : "not-controllable";
  } else {
    doc["verdict"] = "undecided";
  }
  doc["limit_hit"] = report.any_limit();

  if (report.unbalanced_witness) {
    const SimilarityClass& sc = *report.unbalanced_witness;
    json witness;
    witness["sinks"] = sc.sink_set;
    witness["colors"] = sc.color_set;
    witness["odd"] = sc.odd_count;
    witness["even"] = sc.even_count;
    witness["members"] = json::array();
    for (const MultiColoredSubgraph& member : sc.members)
      witness["members"].push_back(arcs_json(member.arcs));
    doc["witnesses"]["unbalanced_class"] = std::move(witness);
  }
  if (report.cactus_witness) {
    json cacti = json::array();
    for (const Cactus& cactus : report.cactus_witness->cacti) {
      json c;
      c["root"] = cactus.root;
      c["trunk"] = arcs_json(cactus.trunk);
      c["buds"] = json::array();
      for (const Bud& bud : cactus.buds) {
        json b;
        b["stem"] = {bud.stem.from, bud.stem.to, bud.stem.color};
        b["cycle"] = arcs_json(bud.cycle);
        c["buds"].push_back(std::move(b));
      }
      cacti.push_back(std::move(c));
    }
    doc["witnesses"]["cactus_union"] = std::move(cacti);
  }
  if (!report.transfer_parents.empty())
    doc["witnesses"]["transfer_tree_parent"] = report.transfer_parents;
  doc["notes"] = report.notes;
  return doc.dump(2);
}

namespace {

void dot_vertices(std::ostringstream& out, int n, int m) {
  out << "  node [shape=circle];\n";
  for (int v = 1; v <= n; ++v) out << "  " << v << ";\n";
  if (m > 0) {
    out << "  node [shape=box];\n";
    for (int v = n + 1; v <= n + m; ++v) out << "  " << v << ";\n";
  }
}

void dot_arc(std::ostringstream& out, const Arc& arc, const char* style) {
  out << "  " << arc.from << " -> " << arc.to << " [label=\"" << arc.color << "\"" << style
      << "];\n";
}

}  // namespace

std::string export_dot(const SCGraph& scg) {
  std::ostringstream out;
  out << "digraph structural_controllability {\n  rankdir=LR;\n";
  dot_vertices(out, scg.n, scg.m);
  for (const Arc& arc : scg.arcs) dot_arc(out, arc, "");
  out << "}\n";
  return out.str();
}

std::string export_dot(const SCGraph& scg, const MultiColoredSubgraph& subgraph) {
  std::ostringstream out;
  out << "digraph multi_colored_subgraph {\n  rankdir=LR;\n";
  dot_vertices(out, scg.n, scg.m);
  const std::vector<Arc> chosen = subgraph.arcs;
  for (const Arc& arc : scg.arcs) {
    const bool in_subgraph = std::binary_search(chosen.begin(), chosen.end(), arc);
    dot_arc(out, arc, in_subgraph ? ", penwidth=2" : ", style=dotted, color=gray");
  }
  out << "}\n";
  return out.str();
}

std::string export_dot(const CactusDecomposition& decomposition) {
  std::ostringstream out;
  out << "digraph cactus_union {\n  rankdir=LR;\n";
  dot_vertices(out, decomposition.n, decomposition.m);
  for (const Cactus& cactus : decomposition.cacti) {
    for (const Arc& arc : cactus.trunk) dot_arc(out, arc, "");
    for (const Bud& bud : cactus.buds) {
      dot_arc(out, bud.stem, ", style=dashed");
      for (const Arc& arc : bud.cycle) dot_arc(out, arc, "");
    }
  }
  out << "}\n";
  return out.str();
}

std::string export_dot(const TransferGraph& tg) {
  std::ostringstream out;
  out << "digraph transfer {\n  rankdir=LR;\n  0 [shape=box];\n";
  for (int v = 1; v <= tg.q; ++v) out << "  " << v << " [shape=circle];\n";
  for (const auto& [from, to] : tg.arcs) out << "  " << from << " -> " << to << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace strucctrl
