#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hsupport/error.hpp"
#include "hsupport/geom.hpp"
#include "hsupport/heuristics.hpp"
#include "hsupport/model.hpp"
#include "hsupport/mst.hpp"

namespace hsupport {

// ---------------------------------------------------------------------------
// Integer program
// ---------------------------------------------------------------------------

/// Flow-based integer program for the shortest support.
///
/// One binary per candidate edge (pairs sharing a hyperedge). Each hyperedge
/// with at least two members is a commodity: every member except the sink
/// (its smallest id) emits one unit that must reach the sink over selected
/// edges. In tree mode every connected component of the candidate graph gets
/// an extra commodity over all its vertices, and the number of selected edges
/// is fixed to n minus the number of components, which forces a spanning
/// forest. In plane mode conflicting edge pairs exclude each other.
struct IlpModel {
  struct Commodity {
    std::vector<VertexId> members;  // ascending
    VertexId sink = 0;
    bool global = false;  // tree-mode component commodity
  };
  struct FlowVar {
    std::size_t commodity = 0;
    VertexId from = 0;
    VertexId to = 0;
    int upper = 0;
  };

  std::size_t num_vertices = 0;
  std::vector<Edge> edge_vars;  // ascending
  std::vector<double> edge_lengths;
  std::vector<Commodity> commodities;  // hyperedges first, in input order
  std::vector<FlowVar> flow_vars;      // grouped by commodity, then (from, to)
  std::vector<std::pair<std::size_t, std::size_t>> crossing_pairs;
  std::size_t num_hyperedge_commodities = 0;
  bool plane_mode = false;
  bool tree_mode = false;

  std::size_t edge_index(const Edge& e) const {
    auto it = std::lower_bound(edge_vars.begin(), edge_vars.end(), e);
    if (it == edge_vars.end() || *it != e) throw InvalidArgument("not a candidate edge");
    return static_cast<std::size_t>(it - edge_vars.begin());
  }

  std::size_t num_components() const {
    return commodities.size() - num_hyperedge_commodities;
  }
};

inline IlpModel build_model(const Hypergraph& h, const ConstraintSet& c) {
  IlpModel m;
  m.num_vertices = h.num_vertices();
  m.plane_mode = c.require_plane;
  m.tree_mode = c.require_acyclic;
  m.edge_vars = h.candidate_edges();
  for (const Edge& e : m.edge_vars) m.edge_lengths.push_back(h.length(e));

  for (HyperedgeId s = 0; s < h.num_hyperedges(); ++s) {
    const auto& members = h.hyperedge(s);
    m.commodities.push_back({members, members.front(), false});
  }
  m.num_hyperedge_commodities = m.commodities.size();

  if (c.require_acyclic) {
    detail::DisjointSets ds(h.num_vertices());
    for (const Edge& e : m.edge_vars) ds.unite(e.u, e.v);
    std::vector<std::vector<VertexId>> groups(h.num_vertices());
    for (VertexId v = 0; v < h.num_vertices(); ++v) groups[ds.find(v)].push_back(v);
    std::vector<std::vector<VertexId>> comps;
    for (auto& g : groups) {
      if (!g.empty()) comps.push_back(std::move(g));
    }
    std::sort(comps.begin(), comps.end());
    for (auto& comp : comps) {
      const VertexId sink = comp.front();
      m.commodities.push_back({std::move(comp), sink, true});
    }
  }

  for (std::size_t ci = 0; ci < m.commodities.size(); ++ci) {
    const auto& com = m.commodities[ci];
    const int upper = static_cast<int>(com.members.size()) - 1;
    for (VertexId a : com.members) {
      for (VertexId b : com.members) {
        if (a == b) continue;
        if (com.global && !h.shares_hyperedge(a, b)) continue;
        m.flow_vars.push_back({ci, a, b, upper});
      }
    }
  }

  if (c.require_plane) {
    std::vector<Segment> segs;
    for (const Edge& e : m.edge_vars) segs.push_back(h.segment(e));
    for (std::size_t i = 0; i < segs.size(); ++i) {
      for (std::size_t j = i + 1; j < segs.size(); ++j) {
        if (segments_conflict(segs[i], segs[j])) m.crossing_pairs.emplace_back(i, j);
      }
    }
  }
  return m;
}

namespace detail {

inline std::string format_real(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string edge_var_name(const Edge& e) {
  return "e_" + std::to_string(e.u) + "_" + std::to_string(e.v);
}

inline std::string flow_var_name(const IlpModel& m, const IlpModel::FlowVar& f) {
  const auto& com = m.commodities[f.commodity];
  if (com.global) return "g_" + std::to_string(f.from) + "_" + std::to_string(f.to);
  return "f_" + std::to_string(f.commodity) + "_" + std::to_string(f.from) + "_" +
         std::to_string(f.to);
}

// Accumulates "coef name" terms, wrapping long rows.
class LpRow {
 public:
  explicit LpRow(std::string head) : text_(" " + std::move(head) + ":") {}

  void add(double coef, const std::string& var) {
    if (terms_ > 0 && terms_ % 8 == 0) text_ += "\n   ";
    if (coef < 0) {
      text_ += " -";
      coef = -coef;
    } else if (terms_ > 0) {
      text_ += " +";
    }
    text_ += " ";
    if (coef != 1.0) text_ += format_real(coef) + " ";
    text_ += var;
    ++terms_;
  }

  const std::string& body() const { return text_; }

  std::string finish(const std::string& sense, double rhs) const {
    return text_ + " " + sense + " " + format_real(rhs) + "\n";
  }

 private:
  std::string text_;
  std::size_t terms_ = 0;
};

}  // namespace detail

/// Writes the model in CPLEX LP format. Output is a pure function of the model.
inline std::string emit_lp(const IlpModel& m) {
  using detail::edge_var_name;
  using detail::flow_var_name;
  std::string out;
  out += "\\ Shortest support of a spatial hypergraph\n";
  out += "Minimize\n";
  {
    detail::LpRow obj("obj");
    for (std::size_t i = 0; i < m.edge_vars.size(); ++i) {
      obj.add(m.edge_lengths[i], edge_var_name(m.edge_vars[i]));
    }
    out += obj.body() + "\n";
  }
  out += "Subject To\n";

  for (std::size_t i = 0; i < m.crossing_pairs.size(); ++i) {
    detail::LpRow row("cx_" + std::to_string(i));
    row.add(1, edge_var_name(m.edge_vars[m.crossing_pairs[i].first]));
    row.add(1, edge_var_name(m.edge_vars[m.crossing_pairs[i].second]));
    out += row.finish("<=", 1);
  }

  // Flow variables of one commodity, indexed by (from, to).
  auto flows_of = [&](std::size_t ci) {
    std::vector<const IlpModel::FlowVar*> fs;
    for (const auto& f : m.flow_vars) {
      if (f.commodity == ci) fs.push_back(&f);
    }
    return fs;
  };

  for (std::size_t ci = 0; ci < m.num_hyperedge_commodities; ++ci) {
    const auto& com = m.commodities[ci];
    if (com.members.size() < 2) continue;
    const auto fs = flows_of(ci);
    const std::string s = std::to_string(ci);
    const double cap = static_cast<double>(com.members.size() - 1);

    detail::LpRow fa("fa_" + s);
    for (const auto* f : fs) {
      if (f->to == com.sink) fa.add(1, flow_var_name(m, *f));
    }
    out += fa.finish("=", cap);

    for (const auto* f : fs) {
      if (f->from != com.sink) continue;
      detail::LpRow fb("fb_" + s + "_" + std::to_string(f->to));
      fb.add(1, flow_var_name(m, *f));
      out += fb.finish("=", 0);
    }

    for (VertexId u : com.members) {
      if (u == com.sink) continue;
      detail::LpRow fc("fc_" + s + "_" + std::to_string(u));
      for (const auto* f : fs) {
        if (f->from == u) fc.add(1, flow_var_name(m, *f));
      }
      for (const auto* f : fs) {
        if (f->to == u) fc.add(-1, flow_var_name(m, *f));
      }
      out += fc.finish("=", 1);
    }

    for (const auto* f : fs) {
      detail::LpRow fd("fd_" + s + "_" + std::to_string(f->from) + "_" +
                       std::to_string(f->to));
      fd.add(1, flow_var_name(m, *f));
      fd.add(-cap, edge_var_name(Edge(f->from, f->to)));
      out += fd.finish("<=", 0);
    }
  }

  if (m.tree_mode) {
    for (std::size_t ci = m.num_hyperedge_commodities; ci < m.commodities.size(); ++ci) {
      const auto& com = m.commodities[ci];
      if (com.members.size() < 2) continue;
      const auto fs = flows_of(ci);
      const std::string c = std::to_string(ci - m.num_hyperedge_commodities);
      const double cap = static_cast<double>(com.members.size() - 1);

      detail::LpRow tga("tga_" + c);
      for (const auto* f : fs) {
        if (f->to == com.sink) tga.add(1, flow_var_name(m, *f));
      }
      out += tga.finish("=", cap);
      for (const auto* f : fs) {
        if (f->from != com.sink) continue;
        detail::LpRow tgb("tgb_" + c + "_" + std::to_string(f->to));
        tgb.add(1, flow_var_name(m, *f));
        out += tgb.finish("=", 0);
      }
      for (VertexId u : com.members) {
        if (u == com.sink) continue;
        detail::LpRow tgc("tgc_" + std::to_string(u));
        for (const auto* f : fs) {
          if (f->from == u) tgc.add(1, flow_var_name(m, *f));
        }
        for (const auto* f : fs) {
          if (f->to == u) tgc.add(-1, flow_var_name(m, *f));
        }
        out += tgc.finish("=", 1);
      }
      for (const auto* f : fs) {
        detail::LpRow tgd("tgd_" + std::to_string(f->from) + "_" + std::to_string(f->to));
        tgd.add(1, flow_var_name(m, *f));
        tgd.add(-cap, edge_var_name(Edge(f->from, f->to)));
        out += tgd.finish("<=", 0);
      }
    }
    detail::LpRow tgn("tgn");
    for (const Edge& e : m.edge_vars) tgn.add(1, edge_var_name(e));
    out += tgn.finish("=", static_cast<double>(m.num_vertices - m.num_components()));
  }

  out += "Bounds\n";
  for (const auto& f : m.flow_vars) {
    out += " 0 <= " + flow_var_name(m, f) + " <= " + std::to_string(f.upper) + "\n";
  }
  out += "Binaries\n";
  for (const Edge& e : m.edge_vars) out += " " + edge_var_name(e) + "\n";
  out += "Generals\n";
  for (const auto& f : m.flow_vars) out += " " + flow_var_name(m, f) + "\n";
  out += "End\n";
  return out;
}

// ---------------------------------------------------------------------------
// Branch and bound
// ---------------------------------------------------------------------------

struct ExactLimits {
  std::size_t node_cap = 0;        // 0: unlimited
  double time_cap_seconds = 0.0;   // 0: unlimited
};

struct ExactResult {
  SupportGraph support;
  double length = 0.0;
  bool proven_optimal = false;
  std::size_t nodes_explored = 0;
};

namespace detail {

// Canonical (length, lexicographic edge list) order shared by both exact
// solvers, so equal-length optima resolve identically.
struct Incumbent {
  bool valid = false;
  double length = std::numeric_limits<double>::infinity();
  std::vector<Edge> edges;

  bool offer(std::vector<Edge> candidate, const Hypergraph& h) {
    std::sort(candidate.begin(), candidate.end());
    const double len = total_length(SupportGraph(candidate.begin(), candidate.end()), h);
    if (valid && (len > length || (len == length && !(candidate < edges)))) return false;
    valid = true;
    length = len;
    edges = std::move(candidate);
    return true;
  }
};

inline constexpr double kBoundSlack = 1e-9;

class BranchAndBound {
 public:
  BranchAndBound(const Hypergraph& h, const ConstraintSet& c, const ExactLimits& limits)
      : h_(h), c_(c), limits_(limits), n_(h.num_vertices()) {
    const auto cand = h.candidate_edges();
    std::vector<EdgeKey> keys;
    for (const Edge& e : cand) keys.push_back({h.length(e), e.u, e.v});
    std::sort(keys.begin(), keys.end());
    index_.assign(n_ * n_, kNone);
    for (const EdgeKey& k : keys) {
      index_[k.u * n_ + k.v] = edges_.size();
      edges_.emplace_back(k.u, k.v);
      lengths_.push_back(k.weight);
    }
    decision_.assign(edges_.size(), kUndecided);
    if (c.require_plane) {
      conflicts_.resize(edges_.size());
      blocked_.assign(edges_.size(), 0);
      for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Segment si = h.segment(edges_[i]);
        for (std::size_t j = i + 1; j < edges_.size(); ++j) {
          if (segments_conflict(si, h.segment(edges_[j]))) {
            conflicts_[i].push_back(j);
            conflicts_[j].push_back(i);
          }
        }
      }
    }
  }

  void seed(const SupportGraph& g) {
    if (satisfies(g, h_, c_)) best_.offer(g.edges(), h_);
  }

  ExactResult run() {
    start_ = std::chrono::steady_clock::now();
    visit(0, 0.0);
    if (!best_.valid) {
      if (aborted_) throw LimitsExceeded("search limits reached before any feasible support");
      throw Infeasible("no support satisfies the " + c_.label() + " constraints");
    }
    ExactResult r;
    r.support = SupportGraph(best_.edges.begin(), best_.edges.end());
    r.length = best_.length;
    r.proven_optimal = !aborted_;
    r.nodes_explored = nodes_;
    return r;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  static constexpr signed char kUndecided = -1;

  bool out_of_budget() {
    if (limits_.node_cap != 0 && nodes_ >= limits_.node_cap) return true;
    if (limits_.time_cap_seconds > 0 && (nodes_ & 1023) == 0) {
      const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
      if (el.count() >= limits_.time_cap_seconds) return true;
    }
    return false;
  }

  void visit(std::size_t i, double committed) {
    if (aborted_) return;
    if (out_of_budget()) {
      aborted_ = true;
      return;
    }
    ++nodes_;

    DisjointSets forest(n_);
    for (std::size_t j : included_) forest.unite(edges_[j].u, edges_[j].v);

    if (is_support_now()) {
      std::vector<Edge> sel;
      for (std::size_t j : included_) sel.push_back(edges_[j]);
      best_.offer(std::move(sel), h_);
      return;
    }
    if (i == edges_.size()) return;

    const auto bound = completion_bound(forest, i);
    if (!bound) return;
    if (best_.valid && committed + *bound > best_.length + kBoundSlack) return;

    const Edge& e = edges_[i];
    const bool can_include =
        (!c_.require_plane || blocked_[i] == 0) &&
        (!c_.require_acyclic || forest.find(e.u) != forest.find(e.v));
    if (can_include) {
      decision_[i] = 1;
      included_.push_back(i);
      if (c_.require_plane) {
        for (std::size_t j : conflicts_[i]) ++blocked_[j];
      }
      visit(i + 1, committed + lengths_[i]);
      if (c_.require_plane) {
        for (std::size_t j : conflicts_[i]) --blocked_[j];
      }
      included_.pop_back();
    }
    decision_[i] = 0;
    visit(i + 1, committed);
    decision_[i] = kUndecided;
  }

  bool is_support_now() const {
    SupportGraph g;
    for (std::size_t j : included_) g.insert(edges_[j]);
    return is_support(g, h_);
  }

  // Max over hyperedges of the cheapest way to span it: included edges free,
  // excluded or blocked edges unavailable. nullopt if some hyperedge cannot
  // be spanned any more.
  std::optional<double> completion_bound(DisjointSets& forest, std::size_t next) {
    double best = 0.0;
    for (HyperedgeId s = 0; s < h_.num_hyperedges(); ++s) {
      const auto& mem = h_.hyperedge(s);
      const std::size_t m = mem.size();
      if (m < 2) continue;
      std::vector<double> key(m, std::numeric_limits<double>::infinity());
      std::vector<char> in(m, 0);
      double total = 0.0;
      std::size_t cur = 0;
      for (std::size_t step = 0; step < m; ++step) {
        in[cur] = 1;
        if (step > 0) total += key[cur];
        for (std::size_t j = 0; j < m; ++j) {
          if (in[j]) continue;
          const std::size_t idx =
              index_[std::min(mem[cur], mem[j]) * n_ + std::max(mem[cur], mem[j])];
          double w;
          if (idx < next) {
            if (decision_[idx] != 1) continue;
            w = 0.0;
          } else {
            if (c_.require_plane && blocked_[idx] != 0) continue;
            if (c_.require_acyclic && forest.find(mem[cur]) == forest.find(mem[j])) continue;
            w = lengths_[idx];
          }
          key[j] = std::min(key[j], w);
        }
        std::size_t nxt = m;
        for (std::size_t j = 0; j < m; ++j) {
          if (!in[j] && (nxt == m || key[j] < key[nxt])) nxt = j;
        }
        if (nxt == m) break;
        if (key[nxt] == std::numeric_limits<double>::infinity()) return std::nullopt;
        cur = nxt;
      }
      best = std::max(best, total);
    }
    return best;
  }

  const Hypergraph& h_;
  ConstraintSet c_;
  ExactLimits limits_;
  std::size_t n_;
  std::vector<Edge> edges_;  // tie-break order
  std::vector<double> lengths_;
  std::vector<std::size_t> index_;
  std::vector<signed char> decision_;
  std::vector<std::size_t> included_;
  std::vector<std::vector<std::size_t>> conflicts_;
  std::vector<int> blocked_;
  Incumbent best_;
  std::size_t nodes_ = 0;
  bool aborted_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// Provably optimal support under `c` by branch and bound over candidate
/// edges in tie-break order. Throws Infeasible when no support satisfies `c`.
/// When the limits run out, returns the best support found with
/// proven_optimal = false.
inline ExactResult solve_exact(const Hypergraph& h, const ConstraintSet& c,
                               const ExactLimits& limits = {}) {
  detail::BranchAndBound bb(h, c, limits);
  if (!h.core().empty()) {
    try {
      bb.seed(local_search(h, c).support);
    } catch (const InvalidArgument&) {
      // Star not plane (collinear input); search without a seed.
    }
  } else {
    bb.seed(mst_iteration(h).support);
  }
  return bb.run();
}

/// Exhaustive reference solver for tiny instances (at most 8 vertices).
inline ExactResult brute_force_oracle(const Hypergraph& h, const ConstraintSet& c) {
  if (h.num_vertices() > 8) throw InvalidArgument("oracle limited to 8 vertices");
  std::vector<Edge> edges = h.candidate_edges();
  std::sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
    return std::make_tuple(h.length(a), a.u, a.v) < std::make_tuple(h.length(b), b.u, b.v);
  });

  detail::Incumbent best;
  if (!h.core().empty()) {
    const SupportGraph star = star_support(h);
    if (satisfies(star, h, c)) best.offer(star.edges(), h);
  }

  std::vector<Edge> chosen;
  std::size_t leaves = 0;
  auto connected = [&](VertexId a, VertexId b) {
    std::vector<VertexId> stack{a};
    std::vector<char> seen(h.num_vertices(), 0);
    seen[a] = 1;
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      if (x == b) return true;
      for (const Edge& e : chosen) {
        const VertexId y = e.u == x ? e.v : (e.v == x ? e.u : x);
        if (y != x && !seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    return false;
  };

  auto dfs = [&](auto&& self, std::size_t i, double partial) -> void {
    if (best.valid && partial > best.length + 1e-9) return;
    if (i == edges.size()) {
      ++leaves;
      const SupportGraph g(chosen.begin(), chosen.end());
      if (is_support(g, h)) best.offer(chosen, h);
      return;
    }
    const Edge& e = edges[i];
    bool ok = true;
    if (c.require_plane) {
      const Segment se = h.segment(e);
      for (const Edge& f : chosen) {
        if (segments_conflict(se, h.segment(f))) {
          ok = false;
          break;
        }
      }
    }
    if (ok && c.require_acyclic && connected(e.u, e.v)) ok = false;
    if (ok) {
      chosen.push_back(e);
      self(self, i + 1, partial + h.length(e));
      chosen.pop_back();
    }
    self(self, i + 1, partial);
  };
  dfs(dfs, 0, 0.0);

  if (!best.valid) throw Infeasible("no support satisfies the " + c.label() + " constraints");
  ExactResult r;
  r.support = SupportGraph(best.edges.begin(), best.edges.end());
  r.length = best.length;
  r.proven_optimal = true;
  r.nodes_explored = leaves;
  return r;
}

}  // namespace hsupport
