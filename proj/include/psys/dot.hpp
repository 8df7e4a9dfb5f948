#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "psys/element_id.hpp"
#include "psys/error.hpp"
#include "psys/hypergraph.hpp"
#include "psys/periodic_system.hpp"
#include "psys/poset.hpp"

namespace psys::dot {

inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

/// One arc `upper -> lower` per cover pair. Nodes and arcs in lexicographic order.
inline void write_hasse(std::ostream& os, const Poset& poset) {
  std::vector<std::string> nodes;
  for (const auto& id : poset.ground()) nodes.push_back(id.str());
  std::sort(nodes.begin(), nodes.end());
  std::vector<std::pair<std::string, std::string>> arcs;
  for (const auto& [lo, hi] : covers(poset).labeled_edges()) arcs.emplace_back(hi.str(), lo.str());
  std::sort(arcs.begin(), arcs.end());
  os << "digraph hasse {\n";
  for (const auto& n : nodes) os << "  " << quoted(n) << ";\n";
  for (const auto& [from, to] : arcs) os << "  " << quoted(from) << " -> " << quoted(to) << ";\n";
  os << "}\n";
}

inline void write_hasse_csv(std::ostream& os, const Poset& poset) {
  std::vector<std::pair<std::string, std::string>> arcs;
  for (const auto& [lo, hi] : covers(poset).labeled_edges()) arcs.emplace_back(hi.str(), lo.str());
  std::sort(arcs.begin(), arcs.end());
  os << "upper,lower\n";
  for (const auto& [from, to] : arcs) os << from << ',' << to << '\n';
}

inline std::string hyperedge_label(const Hypergraph& h, int index) {
  std::string label;
  for (const auto& id : h.member_labels(h.require_position(index))) label += (label.empty() ? "" : ",") + id.str();
  return label;
}

/// Hyperedge-level digraph: node `e<index>` per hyperedge, arc e<i> -> e<j>
/// when C_i dominates C_j above the diagram threshold.
inline void write_dominance(std::ostream& os, const PeriodicSystem& ps, const DominanceDiagram& diagram) {
  const auto& h = ps.hypergraph();
  std::vector<int> nodes = diagram.nodes;
  std::sort(nodes.begin(), nodes.end());
  auto edges = diagram.edges;
  std::sort(edges.begin(), edges.end());
  os << "digraph dominance {\n";
  os << "  label=" << quoted("threshold " + diagram.threshold.to_string()) << ";\n";
  for (int n : nodes) {
    os << "  e" << n << " [label=" << quoted(hyperedge_label(h, n)) << "];\n";
  }
  for (auto [i, j] : edges) os << "  e" << i << " -> e" << j << ";\n";
  os << "}\n";
}

inline void write_dominance_csv(std::ostream& os, const DominanceDiagram& diagram) {
  auto edges = diagram.edges;
  std::sort(edges.begin(), edges.end());
  os << "from,to\n";
  for (auto [i, j] : edges) os << i << ',' << j << '\n';
}

struct ParsedDigraph {
  std::vector<std::string> nodes;  // first-appearance order
  std::vector<std::pair<std::string, std::string>> arcs;
};

/// Reads the subset of DOT this module writes: node statements and single
/// `a -> b` arcs, one statement per line, optionally quoted identifiers.
inline ParsedDigraph parse_digraph(std::istream& in) {
  static const std::regex id_re(R"re(("(?:[^"\\]|\\.)*"|[A-Za-z0-9_.]+))re");
  static const std::regex arc_re(R"re(^\s*("(?:[^"\\]|\\.)*"|[A-Za-z0-9_.]+)\s*->\s*("(?:[^"\\]|\\.)*"|[A-Za-z0-9_.]+)\s*(\[.*\])?\s*;?\s*$)re");
  static const std::regex node_re(R"re(^\s*("(?:[^"\\]|\\.)*"|[A-Za-z0-9_.]+)\s*(\[.*\])?\s*;?\s*$)re");
  auto unquote = [](const std::string& s) {
    if (s.size() < 2 || s.front() != '"') return s;
    std::string out;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
      if (s[i] == '\\' && i + 2 < s.size()) ++i;
      out += s[i];
    }
    return out;
  };
  ParsedDigraph g;
  std::set<std::string> seen;
  auto add_node = [&](const std::string& n) {
    if (seen.insert(n).second) g.nodes.push_back(n);
  };
  std::string line;
  std::size_t line_no = 0;
  bool opened = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!opened) {
      if (line.find("digraph") == std::string::npos || line.find('{') == std::string::npos) {
        throw ParseError(line_no, "expected 'digraph ... {'");
      }
      opened = true;
      continue;
    }
    if (line.find('}') != std::string::npos && line.find('"') == std::string::npos) break;
    if (line.find('=') != std::string::npos && line.find('[') == std::string::npos) continue;  // graph attribute
    std::smatch m;
    if (std::regex_match(line, m, arc_re)) {
      const auto from = unquote(m[1].str());
      const auto to = unquote(m[2].str());
      add_node(from);
      add_node(to);
      g.arcs.emplace_back(from, to);
    } else if (std::regex_match(line, m, node_re)) {
      add_node(unquote(m[1].str()));
    } else {
      throw ParseError(line_no, "unsupported DOT statement");
    }
  }
  if (!opened) throw ParseError(line_no, "no digraph found");
  return g;
}

/// Poset generated by a parsed Hasse digraph (arcs upper -> lower).
inline Poset hasse_closure(const ParsedDigraph& g) {
  std::vector<ElementId> ground;
  for (const auto& n : g.nodes) ground.emplace_back(n);
  std::vector<std::pair<ElementId, ElementId>> pairs;
  for (const auto& [upper, lower] : g.arcs) pairs.emplace_back(ElementId(lower), ElementId(upper));
  return Poset::from_pairs(std::move(ground), pairs);
}

}  // namespace psys::dot
