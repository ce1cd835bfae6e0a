#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsupport/error.hpp"
#include "hsupport/geom.hpp"
#include "hsupport/model.hpp"
#include "hsupport/mst.hpp"

namespace hsupport {

struct SolveReport {
  SupportGraph support;
  double length = 0.0;
  std::size_t rounds_or_passes = 0;
  std::chrono::duration<double> wall_time{0.0};
};

namespace detail {

template <class Fn>
SolveReport timed(const Hypergraph& h, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport r = fn();
  r.wall_time = std::chrono::steady_clock::now() - start;
  r.length = total_length(r.support, h);
  return r;
}

}  // namespace detail

/// Union of the per-hyperedge Euclidean MSTs; a k-approximation.
inline SolveReport mst_approximation(const Hypergraph& h) {
  return detail::timed(h, [&] {
    SolveReport r;
    for (HyperedgeId s = 0; s < h.num_hyperedges(); ++s) {
      r.support.merge(emst(h.hyperedge(s), h));
    }
    r.rounds_or_passes = 1;
    return r;
  });
}

/// Ordered hyperedge recomputations for the iteration heuristic.
///
/// Consecutive repeats are collapsed on construction since recomputing the
/// same hyperedge twice in a row cannot change anything.
class ComputationSequence {
 public:
  ComputationSequence(std::vector<HyperedgeId> steps, std::size_t num_hyperedges) {
    std::vector<char> seen(num_hyperedges, 0);
    for (HyperedgeId s : steps) {
      if (s >= num_hyperedges) {
        throw InvalidArgument("computation sequence references hyperedge " +
                              std::to_string(s));
      }
      seen[s] = 1;
      if (steps_.empty() || steps_.back() != s) steps_.push_back(s);
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
      throw InvalidArgument("computation sequence misses a hyperedge");
    }
  }

  const std::vector<HyperedgeId>& steps() const noexcept { return steps_; }

 private:
  std::vector<HyperedgeId> steps_;
};

/// Per-hyperedge trees of the iteration heuristic and their union.
class IterationState {
 public:
  explicit IterationState(const Hypergraph& h)
      : h_(&h), trees_(h.num_hyperedges()), built_(h.num_hyperedges(), 0) {}

  /// Replaces the tree of hyperedge s by the MST of s in which the edges of
  /// the other hyperedges' trees are free.
  void recompute(HyperedgeId s) {
    const Hypergraph& h = *h_;
    if (s >= h.num_hyperedges()) throw InvalidArgument("hyperedge out of range");
    std::vector<Edge> free_edges;
    for (const auto& [e, count] : usage_) {
      const int own = trees_[s].contains(e) ? 1 : 0;
      if (count - own > 0 && h.contains(s, e.u) && h.contains(s, e.v)) {
        free_edges.push_back(e);
      }
    }
    [[maybe_unused]] const bool was_complete = complete();
    [[maybe_unused]] const double before = length();

    SupportGraph next = mst_with_free_edges(h.hyperedge(s), free_edges, h);
    for (const Edge& e : trees_[s]) {
      if (--usage_[e] == 0) usage_.erase(e);
    }
    for (const Edge& e : next) ++usage_[e];
    trees_[s] = std::move(next);
    built_[s] = 1;

    assert(!was_complete || length() <= before + 1e-9);
  }

  bool complete() const {
    return std::find(built_.begin(), built_.end(), 0) == built_.end();
  }

  const SupportGraph& tree(HyperedgeId s) const { return trees_.at(s); }

  SupportGraph support() const {
    SupportGraph g;
    for (const auto& entry : usage_) g.insert(entry.first);
    return g;
  }

  double length() const {
    double sum = 0.0;
    for (const auto& entry : usage_) sum += h_->length(entry.first);
    return sum;
  }

 private:
  const Hypergraph* h_;
  std::vector<SupportGraph> trees_;
  std::vector<char> built_;
  std::map<Edge, int> usage_;  // number of trees holding each edge
};

struct IterationOptions {
  /// Round-robin pass limit when more than two hyperedges are present.
  std::size_t max_passes = 20;
};

/// Runs the given computation sequence from empty trees.
inline SolveReport mst_iteration(const Hypergraph& h, const ComputationSequence& seq) {
  return detail::timed(h, [&] {
    IterationState state(h);
    for (HyperedgeId s : seq.steps()) state.recompute(s);
    SolveReport r;
    r.support = state.support();
    r.rounds_or_passes = seq.steps().size();
    return r;
  });
}

/// Automatic sequence policy. One hyperedge: a single MST. Two: the shorter
/// of <0,1,0> and <1,0,1>, which are already stable. More: round-robin passes
/// in input order until a full pass leaves the support unchanged.
inline SolveReport mst_iteration(const Hypergraph& h, const IterationOptions& opts = {}) {
  const std::size_t k = h.num_hyperedges();
  if (k <= 1) {
    return mst_iteration(h, ComputationSequence({0}, k));
  }
  if (k == 2) {
    auto rbr = mst_iteration(h, ComputationSequence({0, 1, 0}, k));
    auto brb = mst_iteration(h, ComputationSequence({1, 0, 1}, k));
    auto total = rbr.wall_time + brb.wall_time;
    SolveReport& best = brb.length < rbr.length ? brb : rbr;
    best.wall_time = total;
    return best;
  }
  return detail::timed(h, [&] {
    IterationState state(h);
    SolveReport r;
    SupportGraph previous;
    for (std::size_t pass = 1; pass <= std::max<std::size_t>(opts.max_passes, 1); ++pass) {
      for (HyperedgeId s = 0; s < k; ++s) state.recompute(s);
      r.rounds_or_passes = pass;
      SupportGraph current = state.support();
      const bool stable = pass > 1 && current == previous;
      previous = std::move(current);
      if (stable) break;
    }
    r.support = std::move(previous);
    return r;
  });
}

struct LocalSearchOptions {
  /// Largest replacement set tried per removed edge; 0 means unbounded.
  std::size_t max_replacement = 3;
  /// Safety valve on the number of committed rounds; 0 means unbounded.
  std::size_t max_rounds = 0;
};

struct RoundResult {
  SupportGraph graph;
  bool improved = false;
  double gain = 0.0;
  std::optional<Edge> removed;
  std::vector<Edge> added;
};

namespace detail {

struct Replacement {
  Edge edge;
  double length = 0.0;
  unsigned cover = 0;  // bit j: reconnects the j-th broken hyperedge
};

class ReplacementSearch {
 public:
  ReplacementSearch(const Hypergraph& h, const ConstraintSet& c,
                    const std::vector<Replacement>& cands,
                    const DisjointSets& base_forest, std::size_t cap)
      : h_(h), c_(c), cands_(cands), base_(base_forest), cap_(cap) {}

  /// Cheapest set covering all `uncovered` bits with total length < bound.
  std::optional<std::vector<Edge>> run(unsigned uncovered, double bound) {
    bound_ = bound;
    found_ = false;
    best_.clear();
    chosen_.clear();
    dfs(0, uncovered, 0.0);
    if (!found_) return std::nullopt;
    return best_;
  }

  double best_length() const { return best_len_; }

 private:
  void dfs(std::size_t start, unsigned uncovered, double partial) {
    if (uncovered == 0) {
      std::vector<Edge> set;
      for (std::size_t i : chosen_) set.push_back(cands_[i].edge);
      std::sort(set.begin(), set.end());
      const bool better = !found_ ? partial < bound_
                                  : (partial < best_len_ ||
                                     (partial == best_len_ && set < best_));
      if (better) {
        found_ = true;
        best_len_ = partial;
        best_ = std::move(set);
      }
      return;
    }
    if (cap_ != 0 && chosen_.size() >= cap_) return;
    const double limit = found_ ? best_len_ : bound_;
    for (std::size_t i = start; i < cands_.size(); ++i) {
      const Replacement& r = cands_[i];
      const double len = partial + r.length;
      if (found_ ? len > limit : len >= limit) break;
      if ((r.cover & uncovered) == 0) continue;
      if (!compatible(i)) continue;
      chosen_.push_back(i);
      dfs(i + 1, uncovered & ~r.cover, len);
      chosen_.pop_back();
    }
  }

  bool compatible(std::size_t i) const {
    const Edge& e = cands_[i].edge;
    if (c_.require_plane) {
      const Segment seg = h_.segment(e);
      for (std::size_t j : chosen_) {
        if (segments_conflict(seg, h_.segment(cands_[j].edge))) return false;
      }
    }
    if (c_.require_acyclic && !chosen_.empty()) {
      DisjointSets ds = base_;
      for (std::size_t j : chosen_) ds.unite(cands_[j].edge.u, cands_[j].edge.v);
      if (ds.find(e.u) == ds.find(e.v)) return false;
    }
    return true;
  }

  const Hypergraph& h_;
  const ConstraintSet& c_;
  const std::vector<Replacement>& cands_;
  const DisjointSets& base_;
  std::size_t cap_;
  double bound_ = 0.0;
  bool found_ = false;
  double best_len_ = 0.0;
  std::vector<Edge> best_;
  std::vector<std::size_t> chosen_;
};

// Vertices of hyperedge s reachable from `from` in g - removed, restricted to s.
inline std::vector<char> reach_within(const Hypergraph& h,
                                      const std::vector<std::vector<VertexId>>& adj,
                                      HyperedgeId s, VertexId from,
                                      const Edge& removed) {
  std::vector<char> seen(h.num_vertices(), 0);
  std::vector<VertexId> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    for (VertexId y : adj[x]) {
      if (seen[y] || !h.contains(s, y)) continue;
      if (Edge(x, y) == removed) continue;
      seen[y] = 1;
      stack.push_back(y);
    }
  }
  return seen;
}

}  // namespace detail

/// One hill-climbing round: for every support edge, remove it and find the
/// cheapest set of strictly shorter candidate edges that reconnects every
/// hyperedge it disconnected while respecting `c`. Commits the single
/// replacement with the largest length reduction (ties: smallest removed
/// edge, then smallest replacement set).
inline RoundResult local_search_round(const Hypergraph& h, const SupportGraph& g,
                                      const ConstraintSet& c,
                                      const LocalSearchOptions& opts = {}) {
  if (!satisfies(g, h, c)) {
    throw InvalidArgument("local search input violates the " + c.label() +
                          " constraints");
  }
  const std::size_t n = h.num_vertices();
  const std::vector<Edge> edges = g.edges();

  std::vector<std::vector<VertexId>> adj(n);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }

  // Conflict cache for plane mode: per candidate pair, how many support edges
  // it conflicts with and the first of them.
  struct ConflictInfo {
    int count = 0;
    Edge first;
  };
  std::vector<ConflictInfo> conflicts;
  std::vector<Segment> support_segs;
  if (c.require_plane) {
    conflicts.assign(n * n, {});
    for (const Edge& e : edges) support_segs.push_back(h.segment(e));
  }
  std::vector<char> conflict_done(c.require_plane ? n * n : 0, 0);
  auto conflict_free_without = [&](const Edge& cand, const Edge& removed) {
    const std::size_t idx = std::size_t{cand.u} * n + cand.v;
    ConflictInfo& info = conflicts[idx];
    if (!conflict_done[idx]) {
      const Segment seg = h.segment(cand);
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (segments_conflict(seg, support_segs[i])) {
          if (info.count == 0) info.first = edges[i];
          ++info.count;
        }
      }
      conflict_done[idx] = 1;
    }
    return info.count == 0 || (info.count == 1 && info.first == removed);
  };

  RoundResult result;
  result.graph = g;
  double best_gain = 0.0;
  std::optional<Edge> best_removed;
  std::vector<Edge> best_added;

  for (const Edge& e : edges) {
    const double le = h.length(e);
    if (le <= best_gain) continue;

    // Hyperedges that lose connectivity, with the side containing e.u.
    std::vector<HyperedgeId> broken;
    std::vector<std::vector<char>> side;
    for (HyperedgeId s : h.membership(e.u)) {
      if (!h.contains(s, e.v)) continue;
      auto reach = detail::reach_within(h, adj, s, e.u, e);
      if (!reach[e.v]) {
        broken.push_back(s);
        side.push_back(std::move(reach));
      }
    }

    if (broken.empty()) {
      // Redundant edge: dropping it alone keeps every constraint.
      if (le > best_gain) {
        best_gain = le;
        best_removed = e;
        best_added.clear();
      }
      continue;
    }
    if (broken.size() > sizeof(unsigned) * 8) {
      throw InvalidArgument("too many hyperedges for local search");
    }

    const double bound = le - best_gain;
    std::map<Edge, unsigned> cover;
    for (std::size_t j = 0; j < broken.size(); ++j) {
      const auto& members = h.hyperedge(broken[j]);
      for (VertexId a : members) {
        if (!side[j][a]) continue;
        for (VertexId b : members) {
          if (side[j][b]) continue;
          const Edge cand(a, b);
          if (h.length(cand) >= bound) continue;
          cover[cand] |= 1u << j;
        }
      }
    }

    detail::DisjointSets forest(n);
    if (c.require_acyclic) {
      for (const Edge& f : edges) {
        if (f != e) forest.unite(f.u, f.v);
      }
    }
    std::vector<detail::Replacement> cands;
    for (const auto& [cand, mask] : cover) {
      if (c.require_plane && !conflict_free_without(cand, e)) continue;
      if (c.require_acyclic && forest.find(cand.u) == forest.find(cand.v)) continue;
      cands.push_back({cand, h.length(cand), mask});
    }
    std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
      return std::tie(a.length, a.edge) < std::tie(b.length, b.edge);
    });

    detail::ReplacementSearch search(h, c, cands, forest, opts.max_replacement);
    const unsigned all = broken.size() == sizeof(unsigned) * 8
                             ? ~0u
                             : (1u << broken.size()) - 1u;
    auto found = search.run(all, bound);
    if (!found) continue;
    const double gain = le - search.best_length();
    if (gain > best_gain) {
      best_gain = gain;
      best_removed = e;
      best_added = std::move(*found);
    }
  }

  if (!best_removed) return result;
  result.graph.erase(*best_removed);
  for (const Edge& a : best_added) result.graph.insert(a);
  result.improved = true;
  result.gain = best_gain;
  result.removed = best_removed;
  result.added = std::move(best_added);
  return result;
}

/// Hill climbing from a feasible seed until no round improves.
inline SolveReport local_search_seeded(const Hypergraph& h, const SupportGraph& seed,
                                       const ConstraintSet& c,
                                       const LocalSearchOptions& opts = {}) {
  if (!satisfies(seed, h, c)) {
    throw InvalidArgument("seed support violates the " + c.label() + " constraints");
  }
  return detail::timed(h, [&] {
    SolveReport r;
    r.support = seed;
    while (opts.max_rounds == 0 || r.rounds_or_passes < opts.max_rounds) {
      RoundResult round = local_search_round(h, r.support, c, opts);
      if (!round.improved) break;
      r.support = std::move(round.graph);
      ++r.rounds_or_passes;
    }
    return r;
  });
}

/// Hill climbing from the star support; needs a nonempty common core.
inline SolveReport local_search(const Hypergraph& h, const ConstraintSet& c,
                                const LocalSearchOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  const SupportGraph star = star_support(h);
  SolveReport r = local_search_seeded(h, star, c, opts);
  r.wall_time = std::chrono::steady_clock::now() - start;
  return r;
}

}  // namespace hsupport
