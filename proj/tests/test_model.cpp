#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hsupport/model.hpp"
#include "hsupport/mst.hpp"
#include "oracles.hpp"

using namespace hsupport;

namespace {

// Two disjoint hyperedges whose only supports cross: r = {0,1}, b = {2,3}.
Hypergraph x_configuration() {
  return Hypergraph({{0, 0}, {1, 1}, {0, 1}, {1, 0}}, {{0, 1}, {2, 3}});
}

}  // namespace

TEST(Edge, NormalizesAndRejectsLoops) {
  const Edge e(5, 2);
  EXPECT_EQ(e.u, 2u);
  EXPECT_EQ(e.v, 5u);
  EXPECT_THROW(Edge(3, 3), InvalidArgument);
}

TEST(Hypergraph, Validation) {
  EXPECT_THROW(Hypergraph({{0, 0}, {0, 0}}, {{0, 1}}), InvalidArgument);
  EXPECT_THROW(Hypergraph({{0, 0}, {1, 0}}, {{0, 1}, {}}), InvalidArgument);
  EXPECT_THROW(Hypergraph({{0, 0}, {1, 0}}, {{0, 2}}), InvalidArgument);
  EXPECT_THROW(Hypergraph({{0, 0}, {1, 0}, {2, 0}}, {{0, 1}}), InvalidArgument);
  EXPECT_THROW(Hypergraph({{0, 0}, {NAN, 0}}, {{0, 1}}), InvalidArgument);
}

TEST(Hypergraph, CoreAndCandidates) {
  const Hypergraph h({{0, 0}, {1, 0}, {2, 0}, {3, 0}}, {{2, 0, 1}, {1, 2, 3}});
  EXPECT_EQ(h.hyperedge(0), (std::vector<VertexId>{0, 1, 2}));
  EXPECT_EQ(h.core(), (std::vector<VertexId>{1, 2}));
  const auto cand = h.candidate_edges();
  EXPECT_EQ(cand.size(), 5u);  // all pairs except {0,3}
  EXPECT_EQ(std::count(cand.begin(), cand.end(), Edge(0, 3)), 0);
}

TEST(InducedConnected, Examples) {
  const Hypergraph h({{0, 0}, {1, 0}, {0, 1}, {5, 5}}, {{0, 1}, {0, 1, 2}, {3}});
  EXPECT_TRUE(hyperedge_induced_connected({Edge(0, 1)}, h, 0));
  EXPECT_FALSE(hyperedge_induced_connected({Edge(0, 2), Edge(2, 1)}, h, 0));
  EXPECT_TRUE(hyperedge_induced_connected({}, h, 2));
  EXPECT_THROW(hyperedge_induced_connected({}, h, 3), InvalidArgument);
}

TEST(IsSupport, Examples) {
  const Hypergraph h({{0, 0}, {-1, 0}, {1, 0.5}, {0.3, 2}}, {{0, 1, 3}, {0, 2, 3}});
  EXPECT_TRUE(is_support(star_support(h), h));
  EXPECT_FALSE(is_support({}, h));
  SupportGraph u;
  for (HyperedgeId s = 0; s < h.num_hyperedges(); ++s) u.merge(emst(h.hyperedge(s), h));
  EXPECT_TRUE(is_support(u, h));
}

TEST(IsPlane, Examples) {
  const Hypergraph x = x_configuration();
  EXPECT_FALSE(is_plane({Edge(0, 1), Edge(2, 3)}, x));
  EXPECT_EQ(crossing_count({Edge(0, 1), Edge(2, 3)}, x), 1u);
  EXPECT_TRUE(is_plane({Edge(0, 1)}, x));
  EXPECT_TRUE(is_plane({Edge(0, 2), Edge(0, 3)}, x));
}

TEST(IsAcyclic, Examples) {
  EXPECT_FALSE(is_acyclic({Edge(0, 1), Edge(1, 2), Edge(0, 2)}));
  EXPECT_TRUE(is_acyclic({Edge(0, 1), Edge(1, 2)}));
  EXPECT_TRUE(is_acyclic({}));
}

TEST(TotalLength, Examples) {
  const Hypergraph h({{0, 0}, {3, 4}}, {{0, 1}});
  EXPECT_DOUBLE_EQ(total_length({Edge(0, 1)}, h), 5.0);
  EXPECT_DOUBLE_EQ(total_length({}, h), 0.0);
  const Hypergraph line({{0, 0}, {1, 0}, {2, 0}}, {{0, 1, 2}});
  EXPECT_DOUBLE_EQ(total_length({Edge(0, 1), Edge(1, 2)}, line), 2.0);
}

TEST(TotalLength, IgnoresInsertionOrderAndDuplicates) {
  std::mt19937_64 rng(21);
  const Hypergraph h = oracle::random_hypergraph(rng, 12, 1, false);
  auto edges = h.candidate_edges();
  edges.resize(20);
  const double ref = total_length(SupportGraph(edges.begin(), edges.end()), h);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(edges.begin(), edges.end(), rng);
    SupportGraph g;
    for (const Edge& e : edges) {
      g.insert(e);
      g.insert(Edge(e.v, e.u));
    }
    EXPECT_EQ(total_length(g, h), ref);  // bitwise: summed in sorted order
  }
}

TEST(Satisfies, Examples) {
  const Hypergraph h({{0, 0}, {-1, 0}, {1, 0.5}, {0.3, 2}}, {{0, 1, 3}, {0, 2, 3}});
  EXPECT_TRUE(satisfies(star_support(h), h, ConstraintSet::PT()));
  const Hypergraph x = x_configuration();
  const SupportGraph cross{Edge(0, 1), Edge(2, 3)};
  EXPECT_FALSE(satisfies(cross, x, ConstraintSet::P()));
  EXPECT_TRUE(satisfies(cross, x, ConstraintSet::U()));
}

TEST(Acyclic, EdgeCountBound) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 3 + rng() % 8;
    std::vector<Edge> edges;
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = a + 1; b < n; ++b)
        if (rng() % 3 == 0) edges.emplace_back(a, b);
    const SupportGraph g(edges.begin(), edges.end());
    if (is_acyclic(g)) {
      EXPECT_LE(g.size(), n - 1);
    }
  }
}

TEST(ConstraintSet, ParseAndLabel) {
  EXPECT_EQ(ConstraintSet::parse("u"), ConstraintSet::U());
  EXPECT_EQ(ConstraintSet::parse("T"), ConstraintSet::T());
  EXPECT_EQ(ConstraintSet::parse("p"), ConstraintSet::P());
  EXPECT_EQ(ConstraintSet::parse("pt"), ConstraintSet::PT());
  EXPECT_EQ(ConstraintSet::PT().label(), "PT");
  EXPECT_THROW(ConstraintSet::parse("x"), InvalidArgument);
}
