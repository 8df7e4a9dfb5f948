#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psys/attribute_table.hpp"
#include "psys/decimal.hpp"
#include "psys/element_id.hpp"
#include "psys/error.hpp"
#include "psys/fraction.hpp"
#include "psys/hypergraph.hpp"
#include "psys/poset.hpp"

namespace psys {

/// Ordered hypergraph: similarity classes over a ground set that carries a
/// partial order. The hypergraph's vertex list is kept in the order's ground
/// order, so vertex positions and poset indices coincide.
class PeriodicSystem {
 public:
  /// `aliases` maps labels folded away by a quotient to their representative.
  PeriodicSystem(const Hypergraph& hypergraph, Poset order, std::map<ElementId, ElementId> aliases = {})
      : hypergraph_(relaid(hypergraph, order)), order_(std::move(order)), aliases_(std::move(aliases)) {}

  const Hypergraph& hypergraph() const noexcept { return hypergraph_; }
  const Poset& order() const noexcept { return order_; }
  std::size_t size() const noexcept { return order_.size(); }
  const std::map<ElementId, ElementId>& aliases() const noexcept { return aliases_; }

  /// Representative of `id` if it was folded by a quotient, else `id` itself.
  ElementId resolve(const ElementId& id) const {
    auto it = aliases_.find(id);
    return it == aliases_.end() ? id : it->second;
  }

 private:
  static Hypergraph relaid(const Hypergraph& h, const Poset& order) {
    if (h.vertex_set() != ElementSet(order.ground().begin(), order.ground().end())) {
      throw Error(ErrorCode::ground_mismatch, "hypergraph vertices and order ground set differ");
    }
    return Hypergraph(order.ground(), h.edge_specs());
  }

  Hypergraph hypergraph_;
  Poset order_;
  std::map<ElementId, ElementId> aliases_;
};

/// Quotients the table, orders the representatives by the product order and
/// maps class membership onto representatives (a folded label's memberships
/// are inherited by its representative).
inline PeriodicSystem build_periodic_system(const AttributeTable& table, const Hypergraph& classes) {
  auto q = quotient_by_equivalence(table);
  if (classes.vertex_set() != ElementSet(table.elements().begin(), table.elements().end())) {
    std::string detail;
    for (const auto& v : classes.vertices()) {
      if (!table.index_of(v)) {
        detail = "class member '" + v.str() + "' is not in the attribute table";
        break;
      }
    }
    if (detail.empty()) {
      for (const auto& e : table.elements()) {
        if (!classes.has_vertex(e)) {
          detail = "'" + e.str() + "' is missing from the class hypergraph";
          break;
        }
      }
    }
    throw Error(ErrorCode::ground_mismatch, detail);
  }
  std::vector<Hypergraph::EdgeSpec> specs;
  for (const auto& spec : classes.edge_specs()) {
    Hypergraph::EdgeSpec mapped{spec.index, {}};
    for (const auto& m : spec.members) {
      const auto& rep = q.representative.at(m);
      if (std::find(mapped.members.begin(), mapped.members.end(), rep) == mapped.members.end()) {
        mapped.members.push_back(rep);
      }
    }
    specs.push_back(std::move(mapped));
  }
  std::map<ElementId, ElementId> aliases;
  for (const auto& [orig, rep] : q.representative) {
    if (orig != rep) aliases.emplace(orig, rep);
  }
  Poset order = product_order(q.table);
  Hypergraph h(q.table.elements(), specs);
  return PeriodicSystem(h, std::move(order), std::move(aliases));
}

/// Total order plus partition.
inline bool is_mendeleevian(const PeriodicSystem& ps) {
  return is_total_order(ps.order()) && is_partition(ps.hypergraph());
}

/// |{y : y < x}| / (n - 1).
inline Fraction dominance_degree(const PeriodicSystem& ps, const ElementId& x) {
  const auto& p = ps.order();
  const auto i = p.require_index(ps.resolve(x));
  if (p.size() < 2) throw Error(ErrorCode::degenerate_system, "dominance degree needs at least two elements");
  std::int64_t below = 0;
  for (std::size_t j = 0; j < p.size(); ++j) below += p.lt(j, i) ? 1 : 0;
  return Fraction{below, static_cast<std::int64_t>(p.size() - 1)};
}

/// Realized strict comparabilities over the n(n-1)/2 member pairs.
inline Fraction within_hyperedge_dominance(const PeriodicSystem& ps, int index) {
  const auto& e = ps.hypergraph().edge_at(ps.hypergraph().require_position(index));
  const std::size_t n = e.members.size();
  if (n < 2) {
    throw Error(ErrorCode::singleton_hyperedge, "hyperedge " + std::to_string(index) + " has a single member");
  }
  std::int64_t t = 0;
  for (auto a : e.members) {
    for (auto b : e.members) t += ps.order().lt(b, a) ? 1 : 0;
  }
  return Fraction{t, static_cast<std::int64_t>(n * (n - 1) / 2)};
}

/// Members from most to least dominant when they form a chain.
inline std::optional<std::vector<ElementId>> hyperedge_chain_order(const PeriodicSystem& ps, int index) {
  const auto& e = ps.hypergraph().edge_at(ps.hypergraph().require_position(index));
  const auto& p = ps.order();
  for (std::size_t a = 0; a < e.members.size(); ++a) {
    for (std::size_t b = a + 1; b < e.members.size(); ++b) {
      if (!p.comparable(e.members[a], e.members[b])) return std::nullopt;
    }
  }
  auto members = e.members;
  std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) { return p.lt(b, a); });
  std::vector<ElementId> out;
  for (auto m : members) out.push_back(p.ground()[m]);
  return out;
}

/// |{(x_i, x_j) : x_j < x_i}| / (n_i n_j) for hyperedge indices i != j.
inline Fraction inter_hyperedge_dominance(const PeriodicSystem& ps, int i, int j) {
  if (i == j) throw Error(ErrorCode::same_hyperedge, "inter-hyperedge dominance needs two distinct hyperedges");
  const auto& h = ps.hypergraph();
  const auto& ei = h.edge_at(h.require_position(i));
  const auto& ej = h.edge_at(h.require_position(j));
  std::int64_t t = 0;
  for (auto a : ei.members) {
    for (auto b : ej.members) t += ps.order().lt(b, a) ? 1 : 0;
  }
  return Fraction{t, static_cast<std::int64_t>(ei.members.size() * ej.members.size())};
}

struct DominanceDiagram {
  Decimal threshold;
  std::vector<int> nodes;                   // hyperedge indices, in hypergraph order
  std::vector<std::pair<int, int>> edges;  // (i, j): C_i dominates C_j above threshold
};

struct DominanceProfileEntry {
  int edge_index = 0;
  std::size_t in_degree = 0;
  std::size_t out_degree = 0;

  friend bool operator==(const DominanceProfileEntry&, const DominanceProfileEntry&) = default;
};

namespace detail {

// f > d, exactly.
inline bool exceeds(const Fraction& f, const Decimal& d) {
  __int128 scale = 1;
  for (int k = 0; k < d.scale(); ++k) scale *= 10;
  return static_cast<__int128>(f.numerator) * scale > static_cast<__int128>(d.mantissa()) * f.denominator;
}

}  // namespace detail

/// Arc (i, j) iff Dom(C_i, C_j) > threshold. Thresholds above 1 are accepted
/// and give no arcs; thresholds <= 0 are rejected.
inline DominanceDiagram dominance_diagram(const PeriodicSystem& ps, const Decimal& threshold) {
  if (threshold <= Decimal{0}) {
    throw Error(ErrorCode::bad_threshold, "threshold must be positive, got " + threshold.to_string());
  }
  DominanceDiagram d{threshold, {}, {}};
  const auto& edges = ps.hypergraph().edges();
  for (const auto& e : edges) d.nodes.push_back(e.index);
  for (const auto& a : edges) {
    for (const auto& b : edges) {
      if (a.index == b.index) continue;
      if (detail::exceeds(inter_hyperedge_dominance(ps, a.index, b.index), threshold)) {
        d.edges.emplace_back(a.index, b.index);
      }
    }
  }
  return d;
}

inline std::vector<DominanceProfileEntry> dominance_profile(const DominanceDiagram& diagram) {
  std::vector<DominanceProfileEntry> out;
  std::map<int, std::size_t> at;
  for (int node : diagram.nodes) {
    at.emplace(node, out.size());
    out.push_back({node, 0, 0});
  }
  for (auto [from, to] : diagram.edges) {
    ++out[at.at(from)].out_degree;
    ++out[at.at(to)].in_degree;
  }
  return out;
}

inline std::vector<DominanceProfileEntry> dominance_profile(const PeriodicSystem& ps, const Decimal& threshold) {
  return dominance_profile(dominance_diagram(ps, threshold));
}

using VertexMap = std::map<ElementId, ElementId>;

/// Every cover pair x <: y of `from` must map to a cover pair of `to`.
inline bool is_cover_preserving(const VertexMap& map, const Poset& from, const Poset& to) {
  if (map.size() != from.size() || from.size() != to.size()) {
    throw Error(ErrorCode::not_a_bijection, "map does not pair the two ground sets one-to-one");
  }
  std::vector<std::size_t> image(from.size());
  std::vector<bool> hit(to.size(), false);
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto it = map.find(from.ground()[i]);
    if (it == map.end()) throw Error(ErrorCode::not_a_bijection, "'" + from.ground()[i].str() + "' is unmapped");
    auto j = to.index_of(it->second);
    if (!j || hit[*j]) throw Error(ErrorCode::not_a_bijection, "'" + it->second.str() + "' is not a distinct target");
    hit[*j] = true;
    image[i] = *j;
  }
  const auto target_covers = covers(to);
  std::set<std::pair<std::size_t, std::size_t>> cover_set(target_covers.edges.begin(), target_covers.edges.end());
  for (auto [lo, hi] : covers(from).edges) {
    if (!cover_set.contains({image[lo], image[hi]})) return false;
  }
  return true;
}

enum class RelationKind { equal, equivalent, isomorphic, sub_system, unrelated };

inline std::string_view to_string(RelationKind k) {
  switch (k) {
    case RelationKind::equal: return "equal";
    case RelationKind::equivalent: return "equivalent";
    case RelationKind::isomorphic: return "isomorphic";
    case RelationKind::sub_system: return "sub-system";
    case RelationKind::unrelated: return "unrelated";
  }
  return "unrelated";
}

struct SystemRelation {
  RelationKind kind = RelationKind::unrelated;
  VertexMap witness;            // psi for equal/equivalent/isomorphic, the inclusion for sub-system
  bool second_in_first = true;  // direction of a sub-system relation
};

namespace detail {

inline std::vector<std::vector<std::uint8_t>> cover_matrix(const Poset& p) {
  std::vector<std::vector<std::uint8_t>> m(p.size(), std::vector<std::uint8_t>(p.size(), 0));
  for (auto [lo, hi] : covers(p).edges) m[lo][hi] = 1;
  return m;
}

inline VertexMap identity_map(const Poset& p) {
  VertexMap m;
  for (const auto& g : p.ground()) m.emplace(g, g);
  return m;
}

// The inclusion of `sub` into `super` is cover-preserving into the order
// `super` induces on sub's ground set.
inline bool inclusion_preserves_covers(const PeriodicSystem& sub, const PeriodicSystem& super) {
  const Poset induced = super.order().restricted_to(sub.order().ground());
  return is_cover_preserving(identity_map(sub.order()), sub.order(), induced);
}

}  // namespace detail

/// Strongest relation among equal, equivalent, isomorphic, sub-system whose
/// hypergraph condition holds under a map psi that also preserves covers.
inline SystemRelation relate_systems(const PeriodicSystem& ps1, const PeriodicSystem& ps2) {
  const auto& h1 = ps1.hypergraph();
  const auto& h2 = ps2.hypergraph();
  const bool same_ground = h1.vertex_set() == h2.vertex_set();
  if (same_ground) {
    const auto id = detail::identity_map(ps1.order());
    const bool id_preserves = is_cover_preserving(id, ps1.order(), ps2.order());
    if (id_preserves && are_equal(h1, h2)) return {RelationKind::equal, id, true};
    if (id_preserves && are_equivalent(h1, h2)) return {RelationKind::equivalent, id, true};
  }

  if (h1.vertex_count() == h2.vertex_count() && h1.edge_count() == h2.edge_count()) {
    const auto c1 = detail::cover_matrix(ps1.order());
    const auto c2 = detail::cover_matrix(ps2.order());
    std::vector<std::size_t> up1(c1.size()), down1(c1.size()), up2(c2.size()), down2(c2.size());
    for (std::size_t a = 0; a < c1.size(); ++a) {
      for (std::size_t b = 0; b < c1.size(); ++b) {
        up1[a] += c1[a][b];
        down1[b] += c1[a][b];
        up2[a] += c2[a][b];
        down2[b] += c2[a][b];
      }
    }
    detail::SearchHooks hooks;
    // psi is injective on covers, so cover counts can only grow under it.
    hooks.vertex_ok = [&](std::size_t v, std::size_t w) { return up1[v] <= up2[w] && down1[v] <= down2[w]; };
    hooks.pair_ok = [&](std::size_t u, std::size_t v, std::size_t mu, std::size_t mv) {
      return !c1[u][v] || c2[mu][mv];
    };
    hooks.source_affinity.assign(c1.size(), std::vector<int>(c1.size(), 0));
    for (std::size_t a = 0; a < c1.size(); ++a) {
      for (std::size_t b = 0; b < c1.size(); ++b) hooks.source_affinity[a][b] = c1[a][b] + c1[b][a];
    }
    std::optional<IsomorphismWitness> found;
    detail::IsomorphismSearch(h1, h2, std::move(hooks)).run([&](const IsomorphismWitness& w) {
      if (!is_cover_preserving(w.vertex_map, ps1.order(), ps2.order())) return true;
      found = w;
      return false;
    });
    if (found) return {RelationKind::isomorphic, found->vertex_map, true};
  }

  if (is_sub_hypergraph(h2, h1) && detail::inclusion_preserves_covers(ps2, ps1)) {
    return {RelationKind::sub_system, detail::identity_map(ps2.order()), true};
  }
  if (is_sub_hypergraph(h1, h2) && detail::inclusion_preserves_covers(ps1, ps2)) {
    return {RelationKind::sub_system, detail::identity_map(ps1.order()), false};
  }
  return {RelationKind::unrelated, {}, true};
}

}  // namespace psys
