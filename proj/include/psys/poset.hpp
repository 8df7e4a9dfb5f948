#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "psys/attribute_table.hpp"
#include "psys/decimal.hpp"
#include "psys/element_id.hpp"
#include "psys/error.hpp"

namespace psys {

/// Finite partially ordered set stored as a dense relation matrix indexed by
/// the ground-list order. The constructor rejects relations that are not
/// reflexive, antisymmetric and transitive.
class Poset {
 public:
  /// `relation` is row-major n x n; relation[i*n + j] != 0 means ground[i] <= ground[j].
  Poset(std::vector<ElementId> ground, std::vector<std::uint8_t> relation)
      : ground_(std::move(ground)), leq_(std::move(relation)) {
    const std::size_t n = ground_.size();
    if (leq_.size() != n * n) throw Error(ErrorCode::invalid_poset, "relation matrix has wrong size");
    for (std::size_t i = 0; i < n; ++i) {
      if (!index_.emplace(ground_[i], i).second) {
        throw Error(ErrorCode::duplicate_element, "'" + ground_[i].str() + "' appears twice in the ground set");
      }
    }
    for (auto& v : leq_) v = v ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq(i, i)) throw Error(ErrorCode::invalid_poset, "not reflexive at '" + ground_[i].str() + "'");
      for (std::size_t j = i + 1; j < n; ++j) {
        if (leq(i, j) && leq(j, i)) {
          throw Error(ErrorCode::invalid_poset,
                      "not antisymmetric: '" + ground_[i].str() + "' and '" + ground_[j].str() + "'");
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!leq(i, j) || i == j) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (leq(j, k) && !leq(i, k)) {
            throw Error(ErrorCode::invalid_poset, "not transitive: '" + ground_[i].str() + "' <= '" +
                                                      ground_[j].str() + "' <= '" + ground_[k].str() + "'");
          }
        }
      }
    }
  }

  /// Reflexive-transitive closure of the given pairs (lower, upper).
  static Poset from_pairs(std::vector<ElementId> ground,
                          const std::vector<std::pair<ElementId, ElementId>>& pairs) {
    const std::size_t n = ground.size();
    std::unordered_map<ElementId, std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) idx.emplace(ground[i], i);
    auto at = [&](const ElementId& id) {
      auto it = idx.find(id);
      if (it == idx.end()) throw Error(ErrorCode::unknown_element, "'" + id.str() + "' is not in the ground set");
      return it->second;
    };
    std::vector<std::uint8_t> m(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
    for (const auto& [lo, hi] : pairs) m[at(lo) * n + at(hi)] = 1;
    // Warshall
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!m[i * n + k]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (m[k * n + j]) m[i * n + j] = 1;
        }
      }
    }
    return Poset(std::move(ground), std::move(m));
  }

  std::size_t size() const noexcept { return ground_.size(); }
  const std::vector<ElementId>& ground() const noexcept { return ground_; }

  bool leq(std::size_t i, std::size_t j) const { return leq_[i * size() + j] != 0; }
  bool lt(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }
  bool comparable(std::size_t i, std::size_t j) const { return leq(i, j) || leq(j, i); }

  bool leq(const ElementId& x, const ElementId& y) const { return leq(require_index(x), require_index(y)); }
  bool lt(const ElementId& x, const ElementId& y) const { return lt(require_index(x), require_index(y)); }

  std::optional<std::size_t> index_of(const ElementId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require_index(const ElementId& id) const {
    if (auto i = index_of(id)) return *i;
    throw Error(ErrorCode::unknown_element, "'" + id.str() + "' is not in the ground set");
  }

  bool contains(const ElementId& id) const { return index_.contains(id); }

  /// Induced suborder on `subset`, in the given order.
  Poset restricted_to(const std::vector<ElementId>& subset) const {
    std::vector<std::size_t> pos;
    pos.reserve(subset.size());
    for (const auto& id : subset) pos.push_back(require_index(id));
    const std::size_t m = subset.size();
    std::vector<std::uint8_t> rel(m * m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) rel[a * m + b] = leq(pos[a], pos[b]) ? 1 : 0;
    }
    return Poset(subset, std::move(rel));
  }

  /// Same ground set and same relation, independent of ground-list order.
  bool same_order_as(const Poset& other) const {
    if (size() != other.size()) return false;
    std::vector<std::size_t> to_other(size());
    for (std::size_t i = 0; i < size(); ++i) {
      auto j = other.index_of(ground_[i]);
      if (!j) return false;
      to_other[i] = *j;
    }
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < size(); ++j) {
        if (leq(i, j) != other.leq(to_other[i], to_other[j])) return false;
      }
    }
    return true;
  }

  friend bool operator==(const Poset& a, const Poset& b) { return a.ground_ == b.ground_ && a.leq_ == b.leq_; }

 private:
  std::vector<ElementId> ground_;
  std::vector<std::uint8_t> leq_;
  std::unordered_map<ElementId, std::size_t> index_;
};

/// Hasse diagram. Each edge (lower, upper) is a pair of ground indices where
/// `upper` covers `lower`; edges are sorted.
struct CoverDigraph {
  std::vector<ElementId> ground;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::vector<std::pair<ElementId, ElementId>> labeled_edges() const {
    std::vector<std::pair<ElementId, ElementId>> out;
    out.reserve(edges.size());
    for (auto [lo, hi] : edges) out.emplace_back(ground[lo], ground[hi]);
    return out;
  }
};

/// Product order: x <= y iff every oriented attribute of x is <= that of y
/// (within `tolerance`, which defaults to exact comparison).
inline Poset product_order(const AttributeTable& table, const Decimal& tolerance = Decimal{}) {
  const std::size_t n = table.size();
  const std::size_t k = table.attribute_count();
  std::vector<std::vector<Decimal>> oriented(n, std::vector<Decimal>(k));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < k; ++a) oriented[i][a] = table.oriented_value(i, a);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (oriented[i] == oriented[j]) {
        throw Error(ErrorCode::duplicate_rows, "'" + table.elements()[i].str() + "' and '" +
                                                   table.elements()[j].str() +
                                                   "' share all attribute values; quotient the table first");
      }
    }
  }
  std::vector<std::uint8_t> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool below = true;
      for (std::size_t a = 0; a < k && below; ++a) below = oriented[i][a] <= oriented[j][a] + tolerance;
      leq[i * n + j] = below ? 1 : 0;
    }
  }
  return Poset(table.elements(), std::move(leq));
}

/// Cover pairs: for each x, the minimal elements of its strict up set, found
/// by discarding everything strictly above some other member of that set.
inline CoverDigraph covers(const Poset& poset) {
  const std::size_t n = poset.size();
  CoverDigraph out{poset.ground(), {}};
  std::vector<std::uint8_t> implied(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::fill(implied.begin(), implied.end(), 0);
    for (std::size_t z = 0; z < n; ++z) {
      if (!poset.lt(x, z)) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (poset.lt(z, y)) implied[y] = 1;
      }
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (poset.lt(x, y) && !implied[y]) out.edges.emplace_back(x, y);
    }
  }
  return out;
}

/// Reflexive-transitive closure of a cover digraph.
inline Poset closure(const CoverDigraph& d) { return Poset::from_pairs(d.ground, d.labeled_edges()); }

struct PairStats {
  std::size_t pairs = 0;
  std::size_t comparable = 0;
  std::size_t incomparable = 0;

  friend bool operator==(const PairStats&, const PairStats&) = default;
};

inline PairStats comparability_stats(const Poset& poset) {
  PairStats s;
  const std::size_t n = poset.size();
  s.pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (poset.comparable(i, j)) ++s.comparable;
    }
  }
  s.incomparable = s.pairs - s.comparable;
  return s;
}

/// Ideal of x, x included.
inline ElementSet down_set(const Poset& poset, const ElementId& x) {
  const auto i = poset.require_index(x);
  ElementSet out;
  for (std::size_t j = 0; j < poset.size(); ++j) {
    if (poset.leq(j, i)) out.insert(poset.ground()[j]);
  }
  return out;
}

/// Filter of x, x included.
inline ElementSet up_set(const Poset& poset, const ElementId& x) {
  const auto i = poset.require_index(x);
  ElementSet out;
  for (std::size_t j = 0; j < poset.size(); ++j) {
    if (poset.leq(i, j)) out.insert(poset.ground()[j]);
  }
  return out;
}

inline ElementSet incomparables(const Poset& poset, const ElementId& x) {
  const auto i = poset.require_index(x);
  ElementSet out;
  for (std::size_t j = 0; j < poset.size(); ++j) {
    if (!poset.comparable(i, j)) out.insert(poset.ground()[j]);
  }
  return out;
}

inline bool is_chain(const Poset& poset, std::span<const ElementId> subset) {
  std::vector<std::size_t> pos;
  pos.reserve(subset.size());
  for (const auto& id : subset) pos.push_back(poset.require_index(id));
  for (std::size_t a = 0; a < pos.size(); ++a) {
    for (std::size_t b = a + 1; b < pos.size(); ++b) {
      if (!poset.comparable(pos[a], pos[b])) return false;
    }
  }
  return true;
}

inline bool is_chain(const Poset& poset, const ElementSet& subset) {
  const std::vector<ElementId> v(subset.begin(), subset.end());
  return is_chain(poset, std::span<const ElementId>(v));
}

inline bool is_total_order(const Poset& poset) { return comparability_stats(poset).incomparable == 0; }

}  // namespace psys
