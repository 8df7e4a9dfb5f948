#pragma once

#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "psys/attribute_table.hpp"
#include "psys/decimal.hpp"
#include "psys/element_id.hpp"
#include "psys/error.hpp"
#include "psys/hypergraph.hpp"

namespace psys::io {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
  return in;
}

/// Rewrites errors raised while reading `path` so the message names it.
template <typename F>
auto with_path(const std::string& path, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    if (e.detail().find(path) != std::string::npos) throw;
    throw ParseError(e.line(), e.detail() + " in '" + path + "'");
  } catch (const Error& e) {
    if (e.detail().find(path) != std::string::npos) throw;
    throw Error(e.code(), e.detail() + " in '" + path + "'");
  }
}

inline ElementId parse_label(std::string_view token, std::size_t line) {
  if (!ElementId::is_valid_label(token)) throw ParseError(line, "bad element label '" + std::string(token) + "'");
  return ElementId(std::string(token));
}

/// Comma-separated attribute table. `#` lines are comments; the first other
/// line is the header, whose first column must be `element`. A column header
/// may carry an orientation suffix (`radius:desc`, `z:asc`); `orientation`
/// overrides both the suffix and the ascending default.
inline AttributeTable parse_attribute_csv(std::istream& in,
                                          const std::map<std::string, Orientation>& orientation = {},
                                          const std::map<std::string, std::string>& units = {}) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::vector<AttributeDescriptor>> header;
  std::vector<ElementId> ids;
  std::vector<std::vector<Decimal>> rows;
  std::set<ElementId> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fields = split(line, ',');
    if (!header) {
      if (fields.front() != "element") throw ParseError(line_no, "first header column must be 'element'");
      std::vector<AttributeDescriptor> attrs;
      for (std::size_t i = 1; i < fields.size(); ++i) {
        AttributeDescriptor d;
        d.name = fields[i];
        if (auto colon = d.name.find(':'); colon != std::string::npos) {
          const auto suffix = d.name.substr(colon + 1);
          d.name = d.name.substr(0, colon);
          if (suffix == "desc" || suffix == "descending") {
            d.orientation = Orientation::descending;
          } else if (suffix != "asc" && suffix != "ascending") {
            throw ParseError(line_no, "unknown orientation '" + suffix + "'");
          }
        }
        if (d.name.empty()) throw ParseError(line_no, "empty column name");
        if (auto it = orientation.find(d.name); it != orientation.end()) d.orientation = it->second;
        if (auto it = units.find(d.name); it != units.end()) d.unit = it->second;
        attrs.push_back(std::move(d));
      }
      if (attrs.empty()) throw ParseError(line_no, "no attribute columns");
      header = std::move(attrs);
      continue;
    }
    if (fields.size() != header->size() + 1) {
      throw ParseError(line_no, "expected " + std::to_string(header->size() + 1) + " fields, found " +
                                    std::to_string(fields.size()));
    }
    auto id = parse_label(fields[0], line_no);
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::duplicate_element, "line " + std::to_string(line_no) + ": element '" + id.str() + "' repeated");
    }
    std::vector<Decimal> values;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      try {
        values.push_back(Decimal::parse(fields[i]));
      } catch (const Error&) {
        throw ParseError(line_no, "column '" + (*header)[i - 1].name + "': '" + fields[i] + "' is not a number");
      }
    }
    ids.push_back(std::move(id));
    rows.push_back(std::move(values));
  }
  if (!header) throw ParseError(line_no, "missing header line");
  if (ids.empty()) throw Error(ErrorCode::empty_input, "no data rows");
  return AttributeTable(std::move(ids), std::move(*header), std::move(rows));
}

inline AttributeTable load_attribute_csv(const std::string& path,
                                         const std::map<std::string, Orientation>& orientation = {},
                                         const std::map<std::string, std::string>& units = {}) {
  return with_path(path, [&] {
    auto in = open_input(path);
    return parse_attribute_csv(in, orientation, units);
  });
}

/// One class per line, members comma-separated, `#` lines are comments.
/// With `known` the vertices are exactly those ids and unknown members are
/// errors; otherwise the vertices are the members in first-appearance order.
/// Hyperedge indices are 0-based in file order.
inline Hypergraph parse_classes(std::istream& in, const std::optional<std::vector<ElementId>>& known = std::nullopt) {
  std::string raw;
  std::size_t line_no = 0;
  std::vector<std::vector<ElementId>> classes;
  std::vector<ElementId> vertices;
  std::set<ElementId> vertex_set;
  std::set<ElementId> known_set;
  if (known) known_set.insert(known->begin(), known->end());
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (!line.empty() && line.front() == '#') continue;
    if (line.empty()) throw ParseError(line_no, "empty class line");
    std::vector<ElementId> members;
    std::set<ElementId> in_class;
    for (const auto& tok : split(line, ',')) {
      if (tok.empty()) throw ParseError(line_no, "empty member");
      auto id = parse_label(tok, line_no);
      if (!in_class.insert(id).second) throw ParseError(line_no, "'" + id.str() + "' listed twice in one class");
      if (known && !known_set.contains(id)) {
        throw Error(ErrorCode::unknown_element,
                    "line " + std::to_string(line_no) + ": '" + id.str() + "' is not in the dataset");
      }
      if (vertex_set.insert(id).second) vertices.push_back(id);
      members.push_back(std::move(id));
    }
    classes.push_back(std::move(members));
  }
  return Hypergraph::indexed_in_order(known ? *known : vertices, classes);
}

inline Hypergraph load_classes(const std::string& path,
                               const std::optional<std::vector<ElementId>>& known = std::nullopt) {
  return with_path(path, [&] {
    auto in = open_input(path);
    return parse_classes(in, known);
  });
}

}  // namespace psys::io
