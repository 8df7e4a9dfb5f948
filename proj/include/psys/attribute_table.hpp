#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "psys/decimal.hpp"
#include "psys/element_id.hpp"
#include "psys/error.hpp"

namespace psys {

enum class Orientation { ascending, descending };

struct AttributeDescriptor {
  std::string name;
  Orientation orientation = Orientation::ascending;
  std::string unit;  // documentation only

  friend bool operator==(const AttributeDescriptor&, const AttributeDescriptor&) = default;
};

/// Elements x oriented numeric attributes. Rows follow `elements()` order,
/// columns follow `attributes()` order. Immutable once built.
class AttributeTable {
 public:
  AttributeTable(std::vector<ElementId> elements, std::vector<AttributeDescriptor> attributes,
                 std::vector<std::vector<Decimal>> rows)
      : elements_(std::move(elements)), attributes_(std::move(attributes)), rows_(std::move(rows)) {
    if (elements_.empty()) throw Error(ErrorCode::empty_input, "attribute table has no elements");
    if (attributes_.empty()) throw Error(ErrorCode::empty_input, "attribute table has no attributes");
    if (rows_.size() != elements_.size()) {
      throw Error(ErrorCode::invalid_argument, "row count does not match element count");
    }
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (!index_.emplace(elements_[i], i).second) {
        throw Error(ErrorCode::duplicate_element, "element '" + elements_[i].str() + "' appears twice");
      }
      if (rows_[i].size() != attributes_.size()) {
        throw Error(ErrorCode::invalid_argument, "row for '" + elements_[i].str() + "' has " +
                                                     std::to_string(rows_[i].size()) + " values, expected " +
                                                     std::to_string(attributes_.size()));
      }
    }
    for (std::size_t a = 0; a < attributes_.size(); ++a) {
      for (std::size_t b = 0; b < a; ++b) {
        if (attributes_[a].name == attributes_[b].name) {
          throw Error(ErrorCode::invalid_argument, "attribute '" + attributes_[a].name + "' appears twice");
        }
      }
    }
  }

  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t attribute_count() const noexcept { return attributes_.size(); }
  const std::vector<ElementId>& elements() const noexcept { return elements_; }
  const std::vector<AttributeDescriptor>& attributes() const noexcept { return attributes_; }

  std::span<const Decimal> row(std::size_t i) const { return rows_.at(i); }
  const Decimal& value(std::size_t row, std::size_t column) const { return rows_.at(row).at(column); }

  /// Value as seen by the order: descending attributes are negated.
  Decimal oriented_value(std::size_t row, std::size_t column) const {
    const Decimal& v = value(row, column);
    return attributes_[column].orientation == Orientation::descending ? -v : v;
  }

  std::optional<std::size_t> index_of(const ElementId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require_index(const ElementId& id) const {
    if (auto i = index_of(id)) return *i;
    throw Error(ErrorCode::unknown_element, "'" + id.str() + "' is not in the table");
  }

  std::size_t attribute_index(std::string_view name) const {
    for (std::size_t a = 0; a < attributes_.size(); ++a) {
      if (attributes_[a].name == name) return a;
    }
    throw Error(ErrorCode::unknown_attribute, "no attribute named '" + std::string(name) + "'");
  }

  std::vector<Decimal> column(std::size_t a) const {
    std::vector<Decimal> out;
    out.reserve(size());
    for (const auto& r : rows_) out.push_back(r.at(a));
    return out;
  }

  /// Keeps only the named attributes, in the given order.
  AttributeTable select(const std::vector<std::string>& names) const {
    std::vector<std::size_t> cols;
    for (const auto& n : names) cols.push_back(attribute_index(n));
    std::vector<AttributeDescriptor> attrs;
    for (auto c : cols) attrs.push_back(attributes_[c]);
    std::vector<std::vector<Decimal>> rows;
    for (const auto& r : rows_) {
      std::vector<Decimal> nr;
      for (auto c : cols) nr.push_back(r[c]);
      rows.push_back(std::move(nr));
    }
    return AttributeTable(elements_, std::move(attrs), std::move(rows));
  }

  /// Keeps only the named elements, in the given order.
  AttributeTable subset(const std::vector<ElementId>& ids) const {
    std::vector<std::vector<Decimal>> rows;
    for (const auto& id : ids) rows.push_back(rows_[require_index(id)]);
    return AttributeTable(ids, attributes_, std::move(rows));
  }

  AttributeTable with_orientation(std::string_view name, Orientation o) const {
    auto attrs = attributes_;
    attrs[attribute_index(name)].orientation = o;
    return AttributeTable(elements_, std::move(attrs), rows_);
  }

  /// Replaces one column's values (and orientation).
  AttributeTable with_column(std::string_view name, const std::vector<Decimal>& values, Orientation o) const {
    if (values.size() != size()) throw Error(ErrorCode::invalid_argument, "column length mismatch");
    const auto a = attribute_index(name);
    auto attrs = attributes_;
    attrs[a].orientation = o;
    auto rows = rows_;
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i][a] = values[i];
    return AttributeTable(elements_, std::move(attrs), std::move(rows));
  }

  friend bool operator==(const AttributeTable& a, const AttributeTable& b) {
    return a.elements_ == b.elements_ && a.attributes_ == b.attributes_ && a.rows_ == b.rows_;
  }

 private:
  std::vector<ElementId> elements_;
  std::vector<AttributeDescriptor> attributes_;
  std::vector<std::vector<Decimal>> rows_;
  std::unordered_map<ElementId, std::size_t> index_;
};

struct Quotient {
  AttributeTable table;                            // one row per class
  std::map<ElementId, ElementId> representative;  // every original id -> its class representative
};

/// Merges elements that agree on every attribute. The representative of a
/// class is its lexicographically smallest label; representative rows keep
/// their original relative order.
inline Quotient quotient_by_equivalence(const AttributeTable& table) {
  const std::size_t n = table.size();
  std::vector<std::size_t> rep(n);
  // row values -> index of the smallest label carrying them
  std::map<std::vector<Decimal>, std::size_t, std::less<>> first_of_row;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Decimal> key(table.row(i).begin(), table.row(i).end());
    auto [it, inserted] = first_of_row.emplace(std::move(key), i);
    if (!inserted && table.elements()[i] < table.elements()[it->second]) it->second = i;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Decimal> key(table.row(i).begin(), table.row(i).end());
    rep[i] = first_of_row.at(key);
  }

  std::vector<ElementId> ids;
  std::vector<std::vector<Decimal>> rows;
  std::map<ElementId, ElementId> representative;
  for (std::size_t i = 0; i < n; ++i) {
    representative.emplace(table.elements()[i], table.elements()[rep[i]]);
    if (rep[i] == i) {
      ids.push_back(table.elements()[i]);
      rows.emplace_back(table.row(i).begin(), table.row(i).end());
    }
  }
  return Quotient{AttributeTable(std::move(ids), table.attributes(), std::move(rows)), std::move(representative)};
}

}  // namespace psys
