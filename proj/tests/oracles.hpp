#pragma once

// Reference implementations used only by the tests. They deliberately take a
// different route from the library code they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "hsupport/hsupport.hpp"

namespace oracle {

using hsupport::Edge;
using hsupport::Point;
using hsupport::VertexId;

// Parametric intersection: solve a + t(b-a) = c + u(d-c) by Cramer's rule.
// Parallel pairs fall back to projecting onto the shared line.
inline bool segments_touch_off_endpoint(Point a, Point b, Point c, Point d) {
  const double rx = b.x - a.x, ry = b.y - a.y;
  const double sx = d.x - c.x, sy = d.y - c.y;
  const double den = rx * sy - ry * sx;
  const double qx = c.x - a.x, qy = c.y - a.y;
  auto is_shared = [&](Point p) {
    return (p == a || p == b) && (p == c || p == d);
  };
  if (std::abs(den) > 1e-12) {
    const double t = (qx * sy - qy * sx) / den;
    const double u = (qx * ry - qy * rx) / den;
    if (t < -1e-12 || t > 1 + 1e-12 || u < -1e-12 || u > 1 + 1e-12) return false;
    const Point p{a.x + t * rx, a.y + t * ry};
    // The only touching point; fine unless it is a common endpoint.
    for (Point e : {a, b}) {
      if (std::hypot(p.x - e.x, p.y - e.y) < 1e-12 && is_shared(e)) return false;
    }
    return true;
  }
  // Parallel: touching requires collinearity.
  if (std::abs(qx * ry - qy * rx) > 1e-12) return false;
  const double len2 = rx * rx + ry * ry;
  double lo = ((c.x - a.x) * rx + (c.y - a.y) * ry) / len2;
  double hi = ((d.x - a.x) * rx + (d.y - a.y) * ry) / len2;
  if (lo > hi) std::swap(lo, hi);
  const double overlap_lo = std::max(0.0, lo), overlap_hi = std::min(1.0, hi);
  if (overlap_hi < overlap_lo - 1e-12) return false;
  if (overlap_hi - overlap_lo > 1e-12) return true;
  // Single touching point: conflict unless it is a shared endpoint.
  const Point p{a.x + overlap_lo * rx, a.y + overlap_lo * ry};
  return !is_shared(p);
}

// All spanning trees of the complete graph on ids, by enumerating every
// (|ids|-1)-edge subset and keeping the acyclic ones.
inline void for_each_spanning_tree(const std::vector<VertexId>& ids,
                                   const std::function<void(const std::vector<Edge>&)>& fn) {
  std::vector<Edge> all;
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) all.emplace_back(ids[i], ids[j]);
  const std::size_t need = ids.empty() ? 0 : ids.size() - 1;
  std::vector<Edge> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (pick.size() == need) {
      // Component labels by relabelling; a chosen edge inside one label closes a cycle.
      std::vector<VertexId> label(*std::max_element(ids.begin(), ids.end()) + 1);
      std::iota(label.begin(), label.end(), VertexId{0});
      for (const Edge& e : pick) {
        const VertexId from = label[e.v], to = label[e.u];
        if (from == to) return;
        for (auto& l : label) {
          if (l == from) l = to;
        }
      }
      fn(pick);
      return;
    }
    if (all.size() - i < need - pick.size()) return;
    pick.push_back(all[i]);
    rec(i + 1);
    pick.pop_back();
    rec(i + 1);
  };
  if (ids.size() <= 1) {
    fn(pick);
    return;
  }
  rec(0);
}

inline double tree_length(const std::vector<Edge>& t, const std::vector<Point>& pos,
                          const std::vector<Edge>& free = {}) {
  double sum = 0;
  for (const Edge& e : t) {
    if (std::find(free.begin(), free.end(), e) != free.end()) continue;
    sum += hsupport::distance(pos[e.u], pos[e.v]);
  }
  return sum;
}

// Random hypergraph with continuous coordinates; every vertex gets at least one
// hyperedge and every hyperedge at least one vertex. Optionally forces a core
// vertex (vertex 0 in every hyperedge).
inline hsupport::Hypergraph random_hypergraph(std::mt19937_64& rng, std::size_t n,
                                              std::size_t k, bool with_core,
                                              double scale = 100.0) {
  std::uniform_real_distribution<double> coord(0.0, scale);
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  std::bernoulli_distribution coin(0.4);
  std::vector<Point> pos;
  for (std::size_t i = 0; i < n; ++i) pos.push_back({coord(rng), coord(rng)});
  std::vector<std::vector<VertexId>> mem(k);
  for (VertexId v = 0; v < n; ++v) {
    bool any = false;
    for (std::size_t s = 0; s < k; ++s) {
      if ((with_core && v == 0) || coin(rng)) {
        mem[s].push_back(v);
        any = true;
      }
    }
    if (!any) mem[pick(rng)].push_back(v);
  }
  for (std::size_t s = 0; s < k; ++s) {
    if (mem[s].empty()) mem[s].push_back(static_cast<VertexId>(rng() % n));
  }
  return hsupport::Hypergraph(std::move(pos), std::move(mem));
}

}  // namespace oracle
