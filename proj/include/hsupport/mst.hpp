#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <tuple>
#include <vector>

#include "hsupport/error.hpp"
#include "hsupport/geom.hpp"
#include "hsupport/model.hpp"

namespace hsupport {

/// Total order on weighted edges: weight, then smaller endpoint, then larger.
/// Every spanning-tree routine in the library breaks ties with this order, so
/// each MST is unique.
struct EdgeKey {
  double weight = std::numeric_limits<double>::infinity();
  VertexId u = std::numeric_limits<VertexId>::max();
  VertexId v = std::numeric_limits<VertexId>::max();

  friend bool operator<(const EdgeKey& a, const EdgeKey& b) {
    return std::tie(a.weight, a.u, a.v) < std::tie(b.weight, b.u, b.v);
  }
};

namespace detail {

inline std::vector<VertexId> sorted_ids(std::span<const VertexId> ids,
                                        const Hypergraph& h) {
  if (ids.empty()) throw InvalidArgument("spanning tree of an empty vertex set");
  std::vector<VertexId> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.back() >= h.num_vertices()) {
    throw InvalidArgument("vertex id out of range");
  }
  return out;
}

}  // namespace detail

/// Euclidean minimum spanning tree of the given vertices (Kruskal).
inline SupportGraph emst(std::span<const VertexId> ids, const Hypergraph& h) {
  const auto verts = detail::sorted_ids(ids, h);
  std::vector<EdgeKey> pairs;
  pairs.reserve(verts.size() * (verts.size() - 1) / 2);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      pairs.push_back({distance(h.position(verts[i]), h.position(verts[j])),
                       verts[i], verts[j]});
    }
  }
  std::sort(pairs.begin(), pairs.end());
  detail::DisjointSets ds(h.num_vertices());
  SupportGraph tree;
  for (const EdgeKey& k : pairs) {
    if (tree.size() + 1 == verts.size()) break;
    if (ds.unite(k.u, k.v)) tree.insert(Edge(k.u, k.v));
  }
  return tree;
}

/// Minimum spanning tree of `ids` where edges in `free_edges` weigh zero and
/// every other pair weighs its Euclidean length.
///
/// Dense Prim: when a vertex joins the tree its free neighbours are relaxed
/// first and marked, then all unmarked vertices outside the tree are relaxed
/// with Euclidean weights. O(|ids|^2 + |free_edges|).
inline SupportGraph mst_with_free_edges(std::span<const VertexId> ids,
                                        std::span<const Edge> free_edges,
                                        const Hypergraph& h) {
  const auto verts = detail::sorted_ids(ids, h);
  const std::size_t m = verts.size();
  std::vector<int> local(h.num_vertices(), -1);
  for (std::size_t i = 0; i < m; ++i) local[verts[i]] = static_cast<int>(i);

  std::vector<std::vector<std::size_t>> free_adj(m);
  for (const Edge& e : free_edges) {
    if (e.v >= h.num_vertices() || local[e.u] < 0 || local[e.v] < 0) {
      throw InvalidArgument("free edge has an endpoint outside the vertex set");
    }
    free_adj[local[e.u]].push_back(static_cast<std::size_t>(local[e.v]));
    free_adj[local[e.v]].push_back(static_cast<std::size_t>(local[e.u]));
  }

  std::vector<EdgeKey> key(m);
  std::vector<char> in_tree(m, 0);
  std::vector<std::size_t> mark(m, 0);
  SupportGraph tree;
  std::size_t next = 0;  // smallest id starts
  for (std::size_t step = 1; step <= m; ++step) {
    const std::size_t cur = next;
    in_tree[cur] = 1;
    if (step > 1) tree.insert(Edge(key[cur].u, key[cur].v));

    const VertexId cur_id = verts[cur];
    auto relax = [&](std::size_t j, double w) {
      const EdgeKey cand{w, std::min(cur_id, verts[j]), std::max(cur_id, verts[j])};
      if (cand < key[j]) key[j] = cand;
    };
    for (std::size_t j : free_adj[cur]) {
      if (in_tree[j]) continue;
      mark[j] = step;
      relax(j, 0.0);
    }
    const Point& p = h.position(cur_id);
    for (std::size_t j = 0; j < m; ++j) {
      if (in_tree[j] || mark[j] == step) continue;
      relax(j, distance(p, h.position(verts[j])));
    }

    bool found = false;
    for (std::size_t j = 0; j < m; ++j) {
      if (in_tree[j]) continue;
      if (!found || key[j] < key[next]) {
        next = j;
        found = true;
      }
    }
  }
  return tree;
}

inline SupportGraph mst_with_free_edges(std::span<const VertexId> ids,
                                        const SupportGraph& free_edges,
                                        const Hypergraph& h) {
  const auto edges = free_edges.edges();
  return mst_with_free_edges(ids, std::span<const Edge>(edges), h);
}

/// Plane support tree built around the common core: the EMST of the core plus
/// an edge from every other vertex to its nearest core vertex (ties to the
/// smaller id). Throws EmptyCore when the hyperedges share no vertex.
inline SupportGraph star_support(const Hypergraph& h) {
  const auto core = h.core();
  if (core.empty()) throw EmptyCore();
  SupportGraph g = emst(core, h);
  std::vector<char> in_core(h.num_vertices(), 0);
  for (VertexId c : core) in_core[c] = 1;
  for (VertexId v = 0; v < h.num_vertices(); ++v) {
    if (in_core[v]) continue;
    VertexId best = core.front();
    double best_d = distance(h.position(v), h.position(best));
    for (VertexId c : core) {
      const double d = distance(h.position(v), h.position(c));
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    g.insert(Edge(v, best));
  }
  return g;
}

}  // namespace hsupport
