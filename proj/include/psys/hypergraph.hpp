#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "psys/element_id.hpp"
#include "psys/error.hpp"

namespace psys {

/// Members are sorted, distinct vertex positions.
struct Hyperedge {
  int index = 0;
  std::vector<std::size_t> members;
};

/// Vertex set plus an indexed family of non-empty vertex subsets. Hyperedges
/// may overlap, repeat, and need not cover the vertices.
class Hypergraph {
 public:
  struct EdgeSpec {
    int index = 0;
    std::vector<ElementId> members;
  };

  Hypergraph(std::vector<ElementId> vertices, const std::vector<EdgeSpec>& edges) : vertices_(std::move(vertices)) {
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      if (!vertex_index_.emplace(vertices_[v], v).second) {
        throw Error(ErrorCode::duplicate_element, "vertex '" + vertices_[v].str() + "' appears twice");
      }
    }
    edges_.reserve(edges.size());
    for (const auto& spec : edges) {
      if (spec.members.empty()) {
        throw Error(ErrorCode::invalid_hypergraph, "hyperedge " + std::to_string(spec.index) + " is empty");
      }
      if (!edge_position_.emplace(spec.index, edges_.size()).second) {
        throw Error(ErrorCode::invalid_hypergraph, "hyperedge index " + std::to_string(spec.index) + " repeated");
      }
      Hyperedge e{spec.index, {}};
      for (const auto& id : spec.members) {
        auto it = vertex_index_.find(id);
        if (it == vertex_index_.end()) {
          throw Error(ErrorCode::unknown_element,
                      "hyperedge " + std::to_string(spec.index) + " names '" + id.str() + "', not a vertex");
        }
        e.members.push_back(it->second);
      }
      std::sort(e.members.begin(), e.members.end());
      e.members.erase(std::unique(e.members.begin(), e.members.end()), e.members.end());
      edges_.push_back(std::move(e));
    }
  }

  /// Hyperedge indices 0, 1, ... in list order.
  static Hypergraph indexed_in_order(std::vector<ElementId> vertices, const std::vector<std::vector<ElementId>>& edges) {
    std::vector<EdgeSpec> specs;
    specs.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) specs.push_back({static_cast<int>(i), edges[i]});
    return Hypergraph(std::move(vertices), specs);
  }

  const std::vector<ElementId>& vertices() const noexcept { return vertices_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Hyperedge>& edges() const noexcept { return edges_; }
  const Hyperedge& edge_at(std::size_t position) const { return edges_.at(position); }

  std::optional<std::size_t> vertex_index(const ElementId& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }

  bool has_vertex(const ElementId& id) const { return vertex_index_.contains(id); }

  ElementSet vertex_set() const { return ElementSet(vertices_.begin(), vertices_.end()); }

  std::optional<std::size_t> position_of(int index) const {
    auto it = edge_position_.find(index);
    if (it == edge_position_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require_position(int index) const {
    if (auto p = position_of(index)) return *p;
    throw Error(ErrorCode::unknown_hyperedge, "no hyperedge with index " + std::to_string(index));
  }

  /// Member labels of the hyperedge at `position`, in vertex order.
  std::vector<ElementId> member_labels(std::size_t position) const {
    std::vector<ElementId> out;
    for (auto v : edges_.at(position).members) out.push_back(vertices_[v]);
    return out;
  }

  ElementSet member_set(std::size_t position) const {
    auto labels = member_labels(position);
    return ElementSet(labels.begin(), labels.end());
  }

  std::size_t degree(std::size_t vertex) const {
    std::size_t d = 0;
    for (const auto& e : edges_) d += std::binary_search(e.members.begin(), e.members.end(), vertex) ? 1 : 0;
    return d;
  }

  std::vector<EdgeSpec> edge_specs() const {
    std::vector<EdgeSpec> out;
    for (std::size_t p = 0; p < edges_.size(); ++p) out.push_back({edges_[p].index, member_labels(p)});
    return out;
  }

 private:
  std::vector<ElementId> vertices_;
  std::vector<Hyperedge> edges_;
  std::unordered_map<ElementId, std::size_t> vertex_index_;
  std::unordered_map<int, std::size_t> edge_position_;
};

/// psi maps vertices of the source onto the target; pi sends each source
/// hyperedge index to the target index holding psi's image of it.
struct IsomorphismWitness {
  std::map<ElementId, ElementId> vertex_map;
  std::map<int, int> edge_permutation;
};

inline bool is_partition(const Hypergraph& h) {
  for (std::size_t v = 0; v < h.vertex_count(); ++v) {
    if (h.degree(v) != 1) return false;
  }
  return true;
}

/// Whether `sub` is a sub-hypergraph of `super`: its vertices are a subset and
/// each of its hyperedges is the trace X_i ∩ X' of some hyperedge of `super`.
inline bool is_sub_hypergraph(const Hypergraph& sub, const Hypergraph& super) {
  for (const auto& v : sub.vertices()) {
    if (!super.has_vertex(v)) return false;
  }
  const ElementSet sub_vertices = sub.vertex_set();
  std::set<ElementSet> traces;
  for (std::size_t p = 0; p < super.edge_count(); ++p) {
    ElementSet trace;
    for (const auto& id : super.member_labels(p)) {
      if (sub_vertices.contains(id)) trace.insert(id);
    }
    traces.insert(std::move(trace));
  }
  for (std::size_t p = 0; p < sub.edge_count(); ++p) {
    if (!traces.contains(sub.member_set(p))) return false;
  }
  return true;
}

/// Checks the witness invariant: psi is a bijection and psi(X_i) = X'_pi(i).
inline bool is_isomorphism(const Hypergraph& source, const Hypergraph& target, const IsomorphismWitness& w) {
  if (source.vertex_count() != target.vertex_count() || source.edge_count() != target.edge_count()) return false;
  if (w.vertex_map.size() != source.vertex_count()) return false;
  std::set<ElementId> image;
  for (const auto& v : source.vertices()) {
    auto it = w.vertex_map.find(v);
    if (it == w.vertex_map.end() || !target.has_vertex(it->second)) return false;
    image.insert(it->second);
  }
  if (image.size() != target.vertex_count()) return false;
  if (w.edge_permutation.size() != source.edge_count()) return false;
  std::set<int> used;
  for (std::size_t p = 0; p < source.edge_count(); ++p) {
    auto it = w.edge_permutation.find(source.edge_at(p).index);
    if (it == w.edge_permutation.end()) return false;
    auto q = target.position_of(it->second);
    if (!q || !used.insert(it->second).second) return false;
    ElementSet mapped;
    for (const auto& id : source.member_labels(p)) mapped.insert(w.vertex_map.at(id));
    if (mapped != target.member_set(*q)) return false;
  }
  return true;
}

namespace detail {

// Extra constraints layered on top of the hypergraph conditions. Positions
// are vertex positions in the source and target hypergraphs.
struct SearchHooks {
  std::function<bool(std::size_t v, std::size_t w)> vertex_ok;
  std::function<bool(std::size_t u, std::size_t v, std::size_t mu, std::size_t mv)> pair_ok;
  std::vector<std::vector<int>> source_affinity;  // extra weight for the visiting order
};

// Backtracking over vertex bijections. Candidates must agree on the sorted
// sizes of incident hyperedges, and every pair of assigned vertices must share
// the same number of hyperedges on both sides. Complete assignments are
// confirmed by matching hyperedge images as a multiset.
class IsomorphismSearch {
 public:
  IsomorphismSearch(const Hypergraph& a, const Hypergraph& b, SearchHooks hooks = {})
      : a_(a), b_(b), n_(a.vertex_count()), hooks_(std::move(hooks)) {}

  /// Calls `visit` for every isomorphism until it returns false.
  /// Returns true if the search was stopped by `visit`.
  bool run(const std::function<bool(const IsomorphismWitness&)>& visit) {
    if (a_.vertex_count() != b_.vertex_count() || a_.edge_count() != b_.edge_count()) return false;
    if (sorted_sizes(a_) != sorted_sizes(b_)) return false;
    co_a_ = co_membership(a_);
    co_b_ = co_membership(b_);
    sig_a_ = signatures(a_);
    sig_b_ = signatures(b_);
    {
      auto sa = sig_a_, sb = sig_b_;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      if (sa != sb) return false;
    }
    for (const auto& e : b_.edges()) target_edges_[e.members].push_back(e.index);
    order_ = visiting_order();
    map_.assign(n_, npos);
    used_.assign(n_, false);
    visit_ = &visit;
    return extend(0);
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  static std::vector<std::size_t> sorted_sizes(const Hypergraph& h) {
    std::vector<std::size_t> s;
    for (const auto& e : h.edges()) s.push_back(e.members.size());
    std::sort(s.begin(), s.end());
    return s;
  }

  static std::vector<std::vector<int>> co_membership(const Hypergraph& h) {
    std::vector<std::vector<int>> c(h.vertex_count(), std::vector<int>(h.vertex_count(), 0));
    for (const auto& e : h.edges()) {
      for (auto u : e.members) {
        for (auto v : e.members) ++c[u][v];
      }
    }
    return c;
  }

  static std::vector<std::vector<std::size_t>> signatures(const Hypergraph& h) {
    std::vector<std::vector<std::size_t>> s(h.vertex_count());
    for (const auto& e : h.edges()) {
      for (auto v : e.members) s[v].push_back(e.members.size());
    }
    for (auto& x : s) std::sort(x.begin(), x.end());
    return s;
  }

  // Most constrained first: prefer vertices tied to already chosen ones.
  std::vector<std::size_t> visiting_order() const {
    std::vector<std::size_t> order;
    std::vector<bool> taken(n_, false);
    for (std::size_t step = 0; step < n_; ++step) {
      std::size_t best = npos;
      std::pair<int, int> best_key{-1, -1};
      for (std::size_t v = 0; v < n_; ++v) {
        if (taken[v]) continue;
        int links = 0;
        for (auto u : order) {
          links += co_a_[u][v];
          if (!hooks_.source_affinity.empty()) links += hooks_.source_affinity[u][v];
        }
        std::pair<int, int> key{links, co_a_[v][v]};
        if (best == npos || key > best_key) {
          best = v;
          best_key = key;
        }
      }
      taken[best] = true;
      order.push_back(best);
    }
    return order;
  }

  bool consistent(std::size_t v, std::size_t w) const {
    if (sig_a_[v] != sig_b_[w]) return false;
    if (hooks_.vertex_ok && !hooks_.vertex_ok(v, w)) return false;
    for (std::size_t u = 0; u < n_; ++u) {
      if (map_[u] == npos) continue;
      if (co_a_[u][v] != co_b_[map_[u]][w]) return false;
      if (hooks_.pair_ok && (!hooks_.pair_ok(u, v, map_[u], w) || !hooks_.pair_ok(v, u, w, map_[u]))) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == n_) return finish();
    const std::size_t v = order_[depth];
    for (std::size_t w = 0; w < n_; ++w) {
      if (used_[w] || !consistent(v, w)) continue;
      map_[v] = w;
      used_[w] = true;
      const bool stop = extend(depth + 1);
      used_[w] = false;
      map_[v] = npos;
      if (stop) return true;
    }
    return false;
  }

  bool finish() {
    auto pool = target_edges_;
    IsomorphismWitness w;
    for (const auto& e : a_.edges()) {
      std::vector<std::size_t> image;
      for (auto v : e.members) image.push_back(map_[v]);
      std::sort(image.begin(), image.end());
      auto it = pool.find(image);
      if (it == pool.end() || it->second.empty()) return false;
      w.edge_permutation.emplace(e.index, it->second.back());
      it->second.pop_back();
    }
    for (std::size_t v = 0; v < n_; ++v) w.vertex_map.emplace(a_.vertices()[v], b_.vertices()[map_[v]]);
    return !(*visit_)(w);
  }

  const Hypergraph& a_;
  const Hypergraph& b_;
  std::size_t n_;
  SearchHooks hooks_;
  std::vector<std::vector<int>> co_a_, co_b_;
  std::vector<std::vector<std::size_t>> sig_a_, sig_b_;
  std::map<std::vector<std::size_t>, std::vector<int>> target_edges_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> map_;
  std::vector<bool> used_;
  const std::function<bool(const IsomorphismWitness&)>* visit_ = nullptr;
};

}  // namespace detail

/// Enumerates isomorphisms source -> target (one witness per vertex
/// bijection) until `visit` returns false.
inline void for_each_isomorphism(const Hypergraph& source, const Hypergraph& target,
                                 const std::function<bool(const IsomorphismWitness&)>& visit) {
  detail::IsomorphismSearch(source, target).run(visit);
}

/// Hypergraphs with index sets of different sizes are reported as not
/// isomorphic.
inline std::optional<IsomorphismWitness> find_isomorphism(const Hypergraph& source, const Hypergraph& target) {
  std::optional<IsomorphismWitness> found;
  for_each_isomorphism(source, target, [&](const IsomorphismWitness& w) {
    found = w;
    return false;
  });
  return found;
}

/// Isomorphic under the identity on labels, for some reordering of indices.
inline bool are_equivalent(const Hypergraph& a, const Hypergraph& b) {
  if (a.vertex_set() != b.vertex_set() || a.edge_count() != b.edge_count()) return false;
  std::multiset<ElementSet> ea, eb;
  for (std::size_t p = 0; p < a.edge_count(); ++p) ea.insert(a.member_set(p));
  for (std::size_t p = 0; p < b.edge_count(); ++p) eb.insert(b.member_set(p));
  return ea == eb;
}

/// Equivalent with the identity permutation: each index carries the same
/// member set in both.
inline bool are_equal(const Hypergraph& a, const Hypergraph& b) {
  if (a.vertex_set() != b.vertex_set() || a.edge_count() != b.edge_count()) return false;
  for (std::size_t p = 0; p < a.edge_count(); ++p) {
    auto q = b.position_of(a.edge_at(p).index);
    if (!q || a.member_set(p) != b.member_set(*q)) return false;
  }
  return true;
}

}  // namespace psys
