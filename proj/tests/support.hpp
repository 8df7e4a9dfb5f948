#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "psys/psys.hpp"

namespace psys::testing {

template <typename F>
std::optional<ErrorCode> error_code_of(F&& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::string data_path(const std::string& name) { return std::string(PSYS_DATA_DIR) + "/" + name; }

inline std::vector<ElementId> labels(std::size_t n, const std::string& prefix = "v") {
  std::vector<ElementId> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(prefix + std::to_string(i));
  return out;
}

inline Poset chain(std::size_t n, const std::string& prefix = "c") {
  const auto ids = labels(n, prefix);
  std::vector<std::pair<ElementId, ElementId>> pairs;
  for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(ids[i], ids[i + 1]);
  return Poset::from_pairs(ids, pairs);
}

inline Poset antichain(std::size_t n) { return Poset::from_pairs(labels(n, "a"), {}); }

// Random order: pairs (i, j) with i < j in a hidden linear extension are
// related with probability `density`, then closed transitively. The ground
// list is shuffled so index order carries no information.
inline Poset random_poset(std::mt19937& rng, std::size_t n, double density) {
  std::vector<ElementId> ids = labels(n, "p");
  std::shuffle(ids.begin(), ids.end(), rng);
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<ElementId, ElementId>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng)) pairs.emplace_back(ElementId("p" + std::to_string(i)), ElementId("p" + std::to_string(j)));
    }
  }
  return Poset::from_pairs(ids, pairs);
}

// Random integer table; duplicate rows are allowed and must be quotiented.
inline AttributeTable random_table(std::mt19937& rng, std::size_t n, std::size_t k, int range) {
  std::uniform_int_distribution<int> value(0, range);
  std::vector<AttributeDescriptor> attrs;
  for (std::size_t a = 0; a < k; ++a) {
    attrs.push_back({"a" + std::to_string(a), a % 2 ? Orientation::descending : Orientation::ascending, ""});
  }
  std::vector<std::vector<Decimal>> rows(n);
  for (auto& row : rows) {
    for (std::size_t a = 0; a < k; ++a) row.emplace_back(value(rng));
  }
  return AttributeTable(labels(n, "e"), attrs, rows);
}

// Transitive reduction by definition: drop every strict pair with a 2-step path.
inline std::set<std::pair<std::size_t, std::size_t>> brute_force_reduction(const Poset& p) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = p.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !p.leq(x, y)) continue;
      bool implied = false;
      for (std::size_t z = 0; z < n && !implied; ++z) {
        implied = z != x && z != y && p.leq(x, z) && p.leq(z, y);
      }
      if (!implied) out.emplace(x, y);
    }
  }
  return out;
}

inline Hypergraph random_hypergraph(std::mt19937& rng, std::size_t vertices, std::size_t edges,
                                    const std::string& prefix = "v") {
  const auto ids = labels(vertices, prefix);
  std::uniform_int_distribution<unsigned> mask(1, (1u << vertices) - 1);
  std::vector<std::vector<ElementId>> family;
  for (std::size_t e = 0; e < edges; ++e) {
    const unsigned m = mask(rng);
    std::vector<ElementId> members;
    for (std::size_t v = 0; v < vertices; ++v) {
      if (m & (1u << v)) members.push_back(ids[v]);
    }
    family.push_back(std::move(members));
  }
  return Hypergraph::indexed_in_order(ids, family);
}

inline Hypergraph from_masks(std::size_t vertices, const std::vector<unsigned>& masks, const std::string& prefix = "v") {
  const auto ids = labels(vertices, prefix);
  std::vector<std::vector<ElementId>> family;
  for (unsigned m : masks) {
    std::vector<ElementId> members;
    for (std::size_t v = 0; v < vertices; ++v) {
      if (m & (1u << v)) members.push_back(ids[v]);
    }
    family.push_back(std::move(members));
  }
  return Hypergraph::indexed_in_order(ids, family);
}

// Copy of `h` with vertex i renamed to perm[i] (under a new prefix) and
// hyperedge indices reversed.
inline Hypergraph relabeled(const Hypergraph& h, const std::vector<std::size_t>& perm, const std::string& prefix) {
  std::map<ElementId, ElementId> rename;
  for (std::size_t i = 0; i < h.vertex_count(); ++i) {
    rename.emplace(h.vertices()[i], ElementId(prefix + std::to_string(perm[i])));
  }
  std::vector<ElementId> vertices;
  for (const auto& v : h.vertices()) vertices.push_back(rename.at(v));
  std::vector<Hypergraph::EdgeSpec> specs;
  const int top = static_cast<int>(h.edge_count()) - 1;
  for (const auto& spec : h.edge_specs()) {
    Hypergraph::EdgeSpec s{top - spec.index, {}};
    for (const auto& m : spec.members) s.members.push_back(rename.at(m));
    specs.push_back(std::move(s));
  }
  return Hypergraph(vertices, specs);
}

// Exhaustive oracle: some vertex bijection maps the multiset of hyperedges of
// `a` onto that of `b`. Hyperedges are compared as bitmasks.
inline bool isomorphic_by_enumeration(const Hypergraph& a, const Hypergraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  const std::size_t n = a.vertex_count();
  auto mask = [](const Hyperedge& e, const std::vector<std::size_t>& perm) {
    std::uint32_t m = 0;
    for (auto v : e.members) m |= 1u << perm[v];
    return m;
  };
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint32_t> target;
  for (const auto& e : b.edges()) target.push_back(mask(e, perm));
  std::sort(target.begin(), target.end());
  std::vector<std::uint32_t> image(a.edge_count());
  do {
    for (std::size_t i = 0; i < a.edge_count(); ++i) image[i] = mask(a.edges()[i], perm);
    std::sort(image.begin(), image.end());
    if (image == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Random system over a random poset with `edges` random classes (each class
// non-empty; classes may overlap and need not cover).
inline PeriodicSystem random_system(std::mt19937& rng, std::size_t n, std::size_t edges, double density) {
  const Poset order = random_poset(rng, n, density);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<std::size_t> size(1, std::min<std::size_t>(n, 4));
  std::vector<std::vector<ElementId>> family;
  for (std::size_t e = 0; e < edges; ++e) {
    std::set<std::size_t> members;
    const std::size_t want = size(rng);
    while (members.size() < want) members.insert(pick(rng));
    std::vector<ElementId> ids;
    for (auto m : members) ids.push_back(order.ground()[m]);
    family.push_back(std::move(ids));
  }
  return PeriodicSystem(Hypergraph::indexed_in_order(order.ground(), family), order);
}

}  // namespace psys::testing
