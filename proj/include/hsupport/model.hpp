#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hsupport/error.hpp"
#include "hsupport/geom.hpp"

namespace hsupport {

using VertexId = std::uint32_t;
using HyperedgeId = std::size_t;

/// Undirected vertex pair, stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  Edge() = default;
  Edge(VertexId a, VertexId b) : u(std::min(a, b)), v(std::max(a, b)) {
    if (a == b) throw InvalidArgument("self-loop edge");
  }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns false if a and b were already in the same set.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

}  // namespace detail

/// Vertices at fixed planar positions plus an ordered list of hyperedges.
///
/// Construction validates: finite, pairwise distinct positions; nonempty
/// hyperedges with in-range members; every vertex in at least one hyperedge.
/// Members of each hyperedge are kept sorted and deduplicated.
class Hypergraph {
 public:
  Hypergraph(std::vector<Point> positions,
             std::vector<std::vector<VertexId>> hyperedges)
      : positions_(std::move(positions)), hyperedges_(std::move(hyperedges)) {
    const std::size_t n = positions_.size();
    for (const Point& p : positions_) {
      if (!is_finite(p)) throw InvalidArgument("vertex position is not finite");
    }
    {
      std::vector<std::pair<double, double>> sorted;
      sorted.reserve(n);
      for (const Point& p : positions_) sorted.emplace_back(p.x, p.y);
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidArgument("two vertices share a position");
      }
    }
    membership_.assign(n, {});
    in_edge_.assign(hyperedges_.size(), std::vector<char>(n, 0));
    for (HyperedgeId s = 0; s < hyperedges_.size(); ++s) {
      auto& members = hyperedges_[s];
      if (members.empty()) {
        throw InvalidArgument("hyperedge " + std::to_string(s) + " is empty");
      }
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      for (VertexId v : members) {
        if (v >= n) {
          throw InvalidArgument("hyperedge " + std::to_string(s) +
                                " references vertex " + std::to_string(v));
        }
        in_edge_[s][v] = 1;
        membership_[v].push_back(s);
      }
    }
    for (VertexId v = 0; v < n; ++v) {
      if (membership_[v].empty()) {
        throw InvalidArgument("vertex " + std::to_string(v) +
                              " is in no hyperedge");
      }
    }
  }

  std::size_t num_vertices() const noexcept { return positions_.size(); }
  std::size_t num_hyperedges() const noexcept { return hyperedges_.size(); }

  const Point& position(VertexId v) const { return positions_.at(v); }
  const std::vector<Point>& positions() const noexcept { return positions_; }

  const std::vector<VertexId>& hyperedge(HyperedgeId s) const {
    return hyperedges_.at(s);
  }
  const std::vector<std::vector<VertexId>>& hyperedges() const noexcept {
    return hyperedges_;
  }

  /// Hyperedges containing v, ascending.
  const std::vector<HyperedgeId>& membership(VertexId v) const {
    return membership_.at(v);
  }

  bool contains(HyperedgeId s, VertexId v) const noexcept {
    return in_edge_[s][v] != 0;
  }

  bool shares_hyperedge(VertexId a, VertexId b) const noexcept {
    const auto& ma = membership_[a];
    const auto& mb = membership_[b];
    auto i = ma.begin();
    auto j = mb.begin();
    while (i != ma.end() && j != mb.end()) {
      if (*i == *j) return true;
      if (*i < *j) ++i; else ++j;
    }
    return false;
  }

  double length(const Edge& e) const {
    return distance(positions_[e.u], positions_[e.v]);
  }

  Segment segment(const Edge& e) const {
    return Segment(positions_[e.u], positions_[e.v]);
  }

  /// Intersection of all hyperedges, ascending.
  std::vector<VertexId> core() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < num_vertices(); ++v) {
      if (membership_[v].size() == hyperedges_.size()) out.push_back(v);
    }
    return out;
  }

  /// Every pair sharing at least one hyperedge, ascending by (u, v). No other
  /// pair can ever be useful in a support.
  std::vector<Edge> candidate_edges() const {
    std::vector<Edge> out;
    for (VertexId a = 0; a < num_vertices(); ++a) {
      for (VertexId b = a + 1; b < num_vertices(); ++b) {
        if (shares_hyperedge(a, b)) out.emplace_back(a, b);
      }
    }
    return out;
  }

  friend bool operator==(const Hypergraph& l, const Hypergraph& r) {
    return l.positions_ == r.positions_ && l.hyperedges_ == r.hyperedges_;
  }

 private:
  std::vector<Point> positions_;
  std::vector<std::vector<VertexId>> hyperedges_;
  std::vector<std::vector<HyperedgeId>> membership_;
  std::vector<std::vector<char>> in_edge_;
};

/// A set of undirected edges; an edge used by several hyperedges is stored once.
class SupportGraph {
 public:
  using const_iterator = std::set<Edge>::const_iterator;

  SupportGraph() = default;
  SupportGraph(std::initializer_list<Edge> edges) : edges_(edges) {}
  template <class It>
  SupportGraph(It first, It last) : edges_(first, last) {}

  bool insert(const Edge& e) { return edges_.insert(e).second; }
  bool erase(const Edge& e) { return edges_.erase(e) > 0; }
  bool contains(const Edge& e) const { return edges_.count(e) > 0; }
  void merge(const SupportGraph& other) {
    edges_.insert(other.edges_.begin(), other.edges_.end());
  }

  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }
  const_iterator begin() const noexcept { return edges_.begin(); }
  const_iterator end() const noexcept { return edges_.end(); }

  std::vector<Edge> edges() const { return {edges_.begin(), edges_.end()}; }

  /// Throws if any endpoint is not a vertex of h.
  void check_vertices(const Hypergraph& h) const {
    for (const Edge& e : edges_) {
      if (e.v >= h.num_vertices()) {
        throw InvalidArgument("support edge references vertex " +
                              std::to_string(e.v));
      }
    }
  }

  friend bool operator==(const SupportGraph&, const SupportGraph&) = default;

 private:
  std::set<Edge> edges_;
};

/// Constraint regime: U, T (acyclic), P (plane) or PT.
struct ConstraintSet {
  bool require_plane = false;
  bool require_acyclic = false;

  static constexpr ConstraintSet U() { return {false, false}; }
  static constexpr ConstraintSet T() { return {false, true}; }
  static constexpr ConstraintSet P() { return {true, false}; }
  static constexpr ConstraintSet PT() { return {true, true}; }

  std::string label() const {
    if (require_plane && require_acyclic) return "PT";
    if (require_plane) return "P";
    if (require_acyclic) return "T";
    return "U";
  }

  /// Accepts u, t, p, pt in either case.
  static ConstraintSet parse(std::string_view text) {
    std::string s(text);
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "u") return U();
    if (s == "t") return T();
    if (s == "p") return P();
    if (s == "pt" || s == "tp") return PT();
    throw InvalidArgument("unknown constraint set '" + std::string(text) + "'");
  }

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;
};

inline bool hyperedge_induced_connected(const SupportGraph& g,
                                        const Hypergraph& h, HyperedgeId s) {
  if (s >= h.num_hyperedges()) {
    throw InvalidArgument("hyperedge index " + std::to_string(s) +
                          " out of range");
  }
  const auto& members = h.hyperedge(s);
  if (members.size() <= 1) return true;
  detail::DisjointSets ds(h.num_vertices());
  std::size_t components = members.size();
  for (const Edge& e : g) {
    if (e.v < h.num_vertices() && h.contains(s, e.u) && h.contains(s, e.v) &&
        ds.unite(e.u, e.v)) {
      --components;
    }
  }
  return components == 1;
}

inline bool is_support(const SupportGraph& g, const Hypergraph& h) {
  for (HyperedgeId s = 0; s < h.num_hyperedges(); ++s) {
    if (!hyperedge_induced_connected(g, h, s)) return false;
  }
  return true;
}

/// Number of conflicting edge pairs in the straight-line embedding.
inline std::size_t crossing_count(const SupportGraph& g, const Hypergraph& h) {
  std::vector<Segment> segs;
  segs.reserve(g.size());
  for (const Edge& e : g) segs.push_back(h.segment(e));
  std::size_t count = 0;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      if (segments_conflict(segs[i], segs[j])) ++count;
    }
  }
  return count;
}

inline bool is_plane(const SupportGraph& g, const Hypergraph& h) {
  return crossing_count(g, h) == 0;
}

inline bool is_acyclic(const SupportGraph& g) {
  if (g.empty()) return true;
  VertexId max_id = 0;
  for (const Edge& e : g) max_id = std::max(max_id, e.v);
  detail::DisjointSets ds(std::size_t{max_id} + 1);
  for (const Edge& e : g) {
    if (!ds.unite(e.u, e.v)) return false;
  }
  return true;
}

/// Sum of Euclidean lengths over distinct edges, accumulated in edge order.
inline double total_length(const SupportGraph& g, const Hypergraph& h) {
  double sum = 0.0;
  for (const Edge& e : g) sum += h.length(e);
  return sum;
}

inline bool satisfies(const SupportGraph& g, const Hypergraph& h,
                      const ConstraintSet& c) {
  for (const Edge& e : g) {
    if (e.v >= h.num_vertices()) return false;
  }
  return is_support(g, h) && (!c.require_plane || is_plane(g, h)) &&
         (!c.require_acyclic || is_acyclic(g));
}

}  // namespace hsupport
