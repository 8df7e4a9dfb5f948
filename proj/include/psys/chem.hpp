#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <regex>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "psys/attribute_table.hpp"
#include "psys/decimal.hpp"
#include "psys/element_id.hpp"
#include "psys/error.hpp"
#include "psys/fraction.hpp"
#include "psys/hypergraph.hpp"
#include "psys/io.hpp"
#include "psys/periodic_system.hpp"
#include "psys/poset.hpp"
#include "psys/spearman.hpp"

namespace psys::chem {

inline constexpr const char* electronegativity = "electronegativity";
inline constexpr const char* radius = "radius_pm";

/// Bond x-R, labelled by its element x.
struct BondRecord {
  ElementId element;
  Decimal electronegativity;  // Pauling, dimensionless
  Decimal radius;             // single-bond covalent radius, pm
};

/// max(values) - v for every v: flips the ranking and sends the maximum to 0.
inline std::vector<Decimal> reorient_attribute(std::span<const Decimal> values) {
  if (values.empty()) throw Error(ErrorCode::empty_input, "nothing to reorient");
  const Decimal top = *std::max_element(values.begin(), values.end());
  std::vector<Decimal> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(top - v);
  return out;
}

/// Electronegativity ascending, radius descending.
inline AttributeTable to_attribute_table(std::span<const BondRecord> bonds) {
  std::vector<ElementId> ids;
  std::vector<std::vector<Decimal>> rows;
  for (const auto& b : bonds) {
    ids.push_back(b.element);
    rows.push_back({b.electronegativity, b.radius});
  }
  return AttributeTable(std::move(ids),
                        {{electronegativity, Orientation::ascending, "Pauling"},
                         {radius, Orientation::descending, "pm"}},
                        std::move(rows));
}

inline std::vector<BondRecord> parse_bond_records(std::istream& in) {
  const auto table = io::parse_attribute_csv(in);
  std::size_t en_col = 0, r_col = 0;
  try {
    en_col = table.attribute_index(electronegativity);
    r_col = table.attribute_index(radius);
  } catch (const Error& e) {
    throw Error(ErrorCode::missing_column, e.detail());
  }
  std::vector<BondRecord> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    BondRecord b{table.elements()[i], table.value(i, en_col), table.value(i, r_col)};
    if (b.electronegativity <= Decimal{0} || b.radius <= Decimal{0}) {
      throw Error(ErrorCode::invalid_argument, "bond '" + b.element.str() + "' has a non-positive value");
    }
    out.push_back(std::move(b));
  }
  return out;
}

/// `element,electronegativity,radius_pm` CSV.
inline AttributeTable load_bond_dataset(const std::string& path) {
  return io::with_path(path, [&] {
    auto in = io::open_input(path);
    auto bonds = parse_bond_records(in);
    return to_attribute_table(bonds);
  });
}

/// Electronegativity with the radius replaced by its reoriented (ascending) form.
inline AttributeTable reoriented_bond_table(const AttributeTable& bonds) {
  const auto r = bonds.column(bonds.attribute_index(radius));
  return bonds.with_column(radius, reorient_attribute(r), Orientation::ascending);
}

// ---------------------------------------------------------------------------
// Ground truth fixtures.

struct OrderRecord {
  ElementSet down;
  ElementSet up;
  ElementSet incomparable;
};

struct PublishedDegree {
  std::vector<ElementId> members;
  Decimal value;  // as printed, two decimals
};

struct GroundTruthFixture {
  std::map<ElementId, OrderRecord> records;  // dominated / dominating / incomparable lists
  std::vector<PublishedDegree> within_degrees;
};

/// Records `X :( n ): a, b, c` in three sections introduced by lines starting
/// "Dominated bonds", "Dominating bonds" and "Incomparable bonds". A record
/// may wrap over several lines; `n` must equal the list length.
inline std::map<ElementId, OrderRecord> parse_order_lists(std::istream& in) {
  static const std::regex record_re(R"(^\s*([^\s:]+)\s*:\(\s*(\d+)\s*\)\s*:(.*)$)");
  struct Pending {
    ElementId id;
    std::size_t count;
    std::string items;
    std::size_t line;
  };
  std::map<ElementId, OrderRecord> out;
  std::array<std::set<ElementId>, 3> seen;
  int section = -1;
  std::optional<Pending> pending;

  auto flush = [&] {
    if (!pending) return;
    ElementSet items;
    std::size_t listed = 0;
    for (const auto& tok : io::split(pending->items, ',')) {
      if (tok.empty()) continue;
      ++listed;
      if (!items.insert(io::parse_label(tok, pending->line)).second) {
        throw ParseError(pending->line, "'" + tok + "' repeated in the list of " + pending->id.str());
      }
    }
    if (listed != pending->count) {
      throw ParseError(pending->line, "list of " + pending->id.str() + " has " + std::to_string(listed) +
                                          " entries but declares " + std::to_string(pending->count));
    }
    auto& rec = out[pending->id];
    (section == 0 ? rec.down : section == 1 ? rec.up : rec.incomparable) = std::move(items);
    pending.reset();
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = io::trim(raw);
    if (line.empty()) continue;
    const std::string text(line);
    int next = -1;
    if (text.rfind("Dominated bonds", 0) == 0) next = 0;
    if (text.rfind("Dominating bonds", 0) == 0) next = 1;
    if (text.rfind("Incomparable bonds", 0) == 0) next = 2;
    if (next >= 0) {
      flush();
      if (next <= section) throw ParseError(line_no, "section out of order");
      section = next;
      continue;
    }
    if (section < 0) continue;  // preamble
    std::smatch m;
    if (std::regex_match(text, m, record_re)) {
      flush();
      auto id = io::parse_label(m[1].str(), line_no);
      if (!seen[static_cast<std::size_t>(section)].insert(id).second) {
        throw ParseError(line_no, "second record for " + id.str() + " in one section");
      }
      pending = Pending{std::move(id), std::stoul(m[2].str()), m[3].str(), line_no};
    } else if (pending) {
      pending->items += "," + text;
    } else {
      throw ParseError(line_no, "expected a record 'X :( n ): ...'");
    }
  }
  flush();
  if (section != 2) throw ParseError(line_no, "expected three sections");
  if (seen[0] != seen[1] || seen[1] != seen[2]) {
    throw ParseError(line_no, "sections list different bonds");
  }
  return out;
}

/// Lines `a, b, c & value`; `#` lines are comments.
inline std::vector<PublishedDegree> parse_published_degrees(std::istream& in) {
  std::vector<PublishedDegree> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = io::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto amp = line.find('&');
    if (amp == std::string_view::npos) throw ParseError(line_no, "expected 'members & value'");
    PublishedDegree row;
    for (const auto& tok : io::split(line.substr(0, amp), ',')) {
      if (tok.empty()) throw ParseError(line_no, "empty member");
      row.members.push_back(io::parse_label(tok, line_no));
    }
    try {
      row.value = Decimal::parse(io::trim(line.substr(amp + 1)));
    } catch (const Error&) {
      throw ParseError(line_no, "bad degree value");
    }
    out.push_back(std::move(row));
  }
  return out;
}

inline GroundTruthFixture load_fixture(const std::string& order_lists_path,
                                       const std::optional<std::string>& degrees_path = std::nullopt) {
  GroundTruthFixture f;
  f.records = io::with_path(order_lists_path, [&] {
    auto in = io::open_input(order_lists_path);
    return parse_order_lists(in);
  });
  if (degrees_path) {
    f.within_degrees = io::with_path(*degrees_path, [&] {
      auto in = io::open_input(*degrees_path);
      return parse_published_degrees(in);
    });
  }
  return f;
}

/// Two-decimal published value -> exact rational it stands for
/// (0.66 and 0.33 are truncated thirds).
inline Fraction published_as_fraction(const Decimal& v) {
  if (v == Decimal::parse("0.66")) return {2, 3};
  if (v == Decimal::parse("0.33")) return {1, 3};
  std::int64_t den = 1;
  for (int i = 0; i < v.scale(); ++i) den *= 10;
  return {v.mantissa(), den};
}

/// Both sides rounded half-up to two decimals.
inline bool matches_published(const Fraction& computed, const Decimal& published) {
  return computed.rounded_units(2) == published_as_fraction(published).rounded_units(2);
}

// ---------------------------------------------------------------------------
// Reconciliation.

struct ReportTargets {
  std::size_t representatives = 93;
  PairStats stats{4278, 3548, 730};
  double mean_within = 0.73;
  double mean_within_tolerance = 0.005;
  double spearman = 0.83;
  double spearman_tolerance = 0.01;
};

struct OrderMismatch {
  ElementId bond;
  std::string list;  // "down", "up", "incomparable" or "record"
  ElementSet missing;  // in the fixture, not computed
  ElementSet extra;    // computed, not in the fixture
};

struct DegreeCheck {
  std::vector<ElementId> members;  // as published
  std::optional<int> hyperedge;    // matching hyperedge of the system
  Fraction computed;
  Decimal published;
  bool ok = false;
};

struct TargetCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct DominanceReport {
  std::size_t elements = 0;
  std::size_t representatives = 0;
  std::map<ElementId, ElementId> folded;
  std::size_t hyperedges = 0;
  PairStats stats;

  std::size_t order_records_checked = 0;
  std::size_t order_records_matched = 0;
  std::vector<OrderMismatch> order_mismatches;

  std::vector<DegreeCheck> degrees;
  std::size_t degrees_matched = 0;

  std::size_t non_singleton_hyperedges = 0;
  double mean_within = 0.0;
  double spearman = 0.0;
  std::vector<std::pair<int, std::vector<ElementId>>> chains;  // hyperedges of degree 1

  std::vector<TargetCheck> targets;

  bool all_ok() const {
    return std::all_of(targets.begin(), targets.end(), [](const TargetCheck& t) { return t.ok; });
  }
};

namespace detail {

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline void compare_list(const ElementId& bond, const char* list, const ElementSet& computed,
                         const ElementSet& expected, std::vector<OrderMismatch>& out, bool& ok) {
  if (computed == expected) return;
  OrderMismatch m{bond, list, {}, {}};
  std::set_difference(expected.begin(), expected.end(), computed.begin(), computed.end(),
                      std::inserter(m.missing, m.missing.end()));
  std::set_difference(computed.begin(), computed.end(), expected.begin(), expected.end(),
                      std::inserter(m.extra, m.extra.end()));
  out.push_back(std::move(m));
  ok = false;
}

}  // namespace detail

/// Recomputes every published quantity from `table` / `system` and compares
/// it with the fixture and the published targets. Mismatches are recorded in
/// the report, never thrown.
inline DominanceReport reproduce_report(const AttributeTable& table, const PeriodicSystem& system,
                                        const GroundTruthFixture& fixture, const ReportTargets& targets = {}) {
  DominanceReport r;
  const auto& order = system.order();
  const auto& h = system.hypergraph();
  r.elements = table.size();
  r.representatives = order.size();
  r.folded = system.aliases();
  r.hyperedges = h.edge_count();
  r.stats = comparability_stats(order);

  // Published order lists, per representative.
  for (const auto& id : order.ground()) {
    ++r.order_records_checked;
    auto it = fixture.records.find(id);
    if (it == fixture.records.end()) {
      r.order_mismatches.push_back({id, "record", {}, {}});
      continue;
    }
    bool ok = true;
    detail::compare_list(id, "down", down_set(order, id), it->second.down, r.order_mismatches, ok);
    detail::compare_list(id, "up", up_set(order, id), it->second.up, r.order_mismatches, ok);
    detail::compare_list(id, "incomparable", incomparables(order, id), it->second.incomparable,
                         r.order_mismatches, ok);
    if (ok) ++r.order_records_matched;
  }
  for (const auto& [id, rec] : fixture.records) {
    if (!order.contains(id)) r.order_mismatches.push_back({id, "record", {}, {}});
  }

  // Within-hyperedge degrees.
  double total = 0.0;
  for (const auto& e : h.edges()) {
    if (e.members.size() < 2) continue;
    ++r.non_singleton_hyperedges;
    const auto d = within_hyperedge_dominance(system, e.index);
    total += d.value();
    if (d.numerator == d.denominator) {
      if (auto chain = hyperedge_chain_order(system, e.index)) r.chains.emplace_back(e.index, *chain);
    }
  }
  r.mean_within = r.non_singleton_hyperedges ? total / static_cast<double>(r.non_singleton_hyperedges) : 0.0;

  for (const auto& row : fixture.within_degrees) {
    DegreeCheck c{row.members, std::nullopt, {0, 1}, row.value, false};
    ElementSet wanted;
    for (const auto& m : row.members) wanted.insert(system.resolve(m));
    for (std::size_t p = 0; p < h.edge_count(); ++p) {
      if (h.member_set(p) == wanted) {
        c.hyperedge = h.edge_at(p).index;
        break;
      }
    }
    if (c.hyperedge && wanted.size() >= 2) {
      c.computed = within_hyperedge_dominance(system, *c.hyperedge);
      c.ok = matches_published(c.computed, row.value);
    }
    if (c.ok) ++r.degrees_matched;
    r.degrees.push_back(std::move(c));
  }

  r.spearman = spearman(table, electronegativity, radius);

  auto add = [&](std::string name, std::string expected, std::string actual, bool ok) {
    r.targets.push_back({std::move(name), std::move(expected), std::move(actual), ok});
  };
  add("representatives", std::to_string(targets.representatives), std::to_string(r.representatives),
      r.representatives == targets.representatives);
  auto stats_str = [](const PairStats& s) {
    return std::to_string(s.pairs) + "/" + std::to_string(s.comparable) + "/" + std::to_string(s.incomparable);
  };
  add("pair statistics", stats_str(targets.stats), stats_str(r.stats), r.stats == targets.stats);
  add("order lists", std::to_string(r.order_records_checked) + "/" + std::to_string(r.order_records_checked),
      std::to_string(r.order_records_matched) + "/" + std::to_string(r.order_records_checked),
      r.order_mismatches.empty());
  add("within-hyperedge degrees", std::to_string(r.degrees.size()) + "/" + std::to_string(r.degrees.size()),
      std::to_string(r.degrees_matched) + "/" + std::to_string(r.degrees.size()),
      r.degrees_matched == r.degrees.size() && !r.degrees.empty());
  add("mean within-hyperedge degree",
      detail::fixed(targets.mean_within, 2) + " +- " + detail::fixed(targets.mean_within_tolerance, 3),
      detail::fixed(r.mean_within, 4), std::fabs(r.mean_within - targets.mean_within) <= targets.mean_within_tolerance);
  add("spearman", detail::fixed(targets.spearman, 2) + " +- " + detail::fixed(targets.spearman_tolerance, 2),
      detail::fixed(r.spearman, 4), std::fabs(r.spearman - targets.spearman) <= targets.spearman_tolerance);
  return r;
}

inline std::string join(const std::vector<ElementId>& ids, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? sep : "") + ids[i].str();
  return out;
}

inline std::string join(const ElementSet& ids, const char* sep) {
  return join(std::vector<ElementId>(ids.begin(), ids.end()), sep);
}

inline void write_report(std::ostream& os, const DominanceReport& r) {
  os << "elements: " << r.elements << "\n";
  os << "representatives: " << r.representatives << "\n";
  for (const auto& [from, to] : r.folded) os << "folded: " << from << " -> " << to << "\n";
  os << "hyperedges: " << r.hyperedges << " (" << r.non_singleton_hyperedges << " with two or more members)\n";
  os << "pairs: " << r.stats.pairs << ", comparable: " << r.stats.comparable
     << ", incomparable: " << r.stats.incomparable << "\n";
  if (r.stats.pairs) {
    os << "comparable share: " << detail::fixed(100.0 * static_cast<double>(r.stats.comparable) / static_cast<double>(r.stats.pairs), 1)
       << "%\n";
  }
  os << "spearman(electronegativity, reoriented radius): " << detail::fixed(r.spearman, 4) << "\n";
  for (const auto& m : r.order_mismatches) {
    os << "MISMATCH order " << m.list << " " << m.bond;
    if (!m.missing.empty()) os << " missing=[" << join(m.missing, ",") << "]";
    if (!m.extra.empty()) os << " extra=[" << join(m.extra, ",") << "]";
    os << "\n";
  }
  for (const auto& c : r.degrees) {
    os << (c.ok ? "ok       " : "MISMATCH ") << "within {" << join(c.members, ",") << "} computed "
       << c.computed.to_display(4) << " published " << c.published << "\n";
  }
  os << "mean within-hyperedge degree: " << detail::fixed(r.mean_within, 4) << "\n";
  for (const auto& [idx, chain] : r.chains) os << "chain " << idx << ": " << join(chain, " > ") << "\n";
  for (const auto& t : r.targets) {
    os << (t.ok ? "[ OK ] " : "[FAIL] ") << t.name << ": expected " << t.expected << ", got " << t.actual << "\n";
  }
  os << "summary: " << r.degrees_matched << "/" << r.degrees.size() << " Table 2 "
     << (r.degrees_matched == r.degrees.size() ? "OK" : "MISMATCH") << ", " << r.order_records_matched << "/"
     << r.order_records_checked << " S1 " << (r.order_mismatches.empty() ? "OK" : "MISMATCH") << "\n";
}

}  // namespace psys::chem
