#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "hsupport/gen.hpp"
#include "hsupport/heuristics.hpp"
#include "hsupport/io.hpp"

using namespace hsupport;

TEST(DegreeArray, EvenScheme) {
  Rng rng(1);
  EXPECT_EQ(degree_array(10, 4, DegreeScheme::Even, rng), DegreeArray({3, 3, 2, 2}));
}

TEST(DegreeArray, FullDegreeStep) {
  DegreeArray d({5, 0, 0});
  ensure_full_degree(d);
  EXPECT_EQ(d, DegreeArray({4, 0, 1}));
  DegreeArray already({1, 0, 2});
  ensure_full_degree(already);
  EXPECT_EQ(already, DegreeArray({1, 0, 2}));
}

TEST(DegreeArray, MinIncidenceStep) {
  DegreeArray d({2, 0});
  ensure_min_incidence(d);
  EXPECT_EQ(d, DegreeArray({0, 2}));
}

TEST(DegreeArray, InvariantsOverRandomTriples) {
  Rng rng(2);
  for (int t = 0; t < 10000; ++t) {
    const std::size_t k = 1 + rng.index(8);
    const std::size_t n = 2 + rng.index(40);
    const auto scheme = static_cast<DegreeScheme>(rng.index(4));
    const DegreeArray d = degree_array(n, k, scheme, rng);
    ASSERT_EQ(d.vertices(), n);
    ASSERT_GE(d[k], 1u);
    ASSERT_GE(d.incidences(), 2 * k);
  }
}

TEST(DegreeArray, SchemePeaks) {
  Rng rng(3);
  const std::size_t k = 6;
  std::map<DegreeScheme, std::vector<int>> hist;
  for (auto scheme : {DegreeScheme::Mid, DegreeScheme::Low, DegreeScheme::High}) {
    auto& h = hist[scheme];
    h.assign(k + 1, 0);
    for (int i = 0; i < 100000; ++i) ++h[draw_degree(scheme, k, rng)];
  }
  auto argmax = [](const std::vector<int>& h) {
    return static_cast<std::size_t>(std::max_element(h.begin() + 1, h.end()) - h.begin());
  };
  // Mid: 1 + floor(6 X), X ~ N(0.5, 2/9): modal bucket is 3 or 4 (ceil(k/2) = 3).
  EXPECT_NEAR(static_cast<double>(argmax(hist[DegreeScheme::Mid])), 3.5, 0.5);
  EXPECT_EQ(argmax(hist[DegreeScheme::Low]), 1u);
  EXPECT_EQ(argmax(hist[DegreeScheme::High]), k);
  // Low is monotone decreasing, High increasing (generous check on buckets).
  for (std::size_t i = 1; i < k; ++i) {
    EXPECT_GT(hist[DegreeScheme::Low][i], hist[DegreeScheme::Low][i + 1]);
    EXPECT_LT(hist[DegreeScheme::High][i], hist[DegreeScheme::High][i + 1]);
  }
  // Mid is symmetric about 3.5 within sampling noise.
  for (std::size_t i = 1; i <= 3; ++i) {
    const double a = hist[DegreeScheme::Mid][i], b = hist[DegreeScheme::Mid][k + 1 - i];
    EXPECT_NEAR(a / b, 1.0, 0.12);
  }
}

TEST(Generate, StructuralGuarantees) {
  Rng rng(4);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t k = 1 + rng.index(6);
    const std::size_t n = 2 + rng.index(30);
    const auto scheme = static_cast<DegreeScheme>(rng.index(4));
    const Hypergraph h = generate(n, k, scheme, rng);
    ASSERT_EQ(h.num_vertices(), n);
    ASSERT_EQ(h.num_hyperedges(), k);
    ASSERT_FALSE(h.core().empty());
    for (const auto& s : h.hyperedges()) ASSERT_GE(s.size(), 2u);
    for (const Point& p : h.positions()) {
      ASSERT_GE(p.x, 0.0);
      ASSERT_LT(p.x, 100.0);
      ASSERT_GE(p.y, 0.0);
      ASSERT_LT(p.y, 100.0);
    }
  }
}

TEST(Generate, DegreesFollowArray) {
  Rng a(7), b(7);
  const DegreeArray d = degree_array(30, 4, DegreeScheme::Low, a);
  const Hypergraph h = generate(30, 4, DegreeScheme::Low, b);
  DegreeArray seen(4);
  for (VertexId v = 0; v < h.num_vertices(); ++v) ++seen[h.membership(v).size()];
  EXPECT_EQ(seen, d);
}

TEST(Generate, Deterministic) {
  Rng a(42), b(42);
  EXPECT_EQ(serialize_hypergraph(generate(20, 3, DegreeScheme::Mid, a)),
            serialize_hypergraph(generate(20, 3, DegreeScheme::Mid, b)));
}

TEST(Generate, RejectsBadArguments) {
  Rng rng(1);
  EXPECT_THROW(generate(1, 1, DegreeScheme::Even, rng), InvalidArgument);
  EXPECT_THROW(generate(5, 0, DegreeScheme::Even, rng), InvalidArgument);
  EXPECT_THROW(parse_scheme("wide"), InvalidArgument);
  EXPECT_EQ(parse_scheme("HIGH"), DegreeScheme::High);
}

TEST(AdversarialFamily, Shape) {
  for (std::size_t n : {7u, 8u, 16u, 32u, 33u}) {
    const Hypergraph h = adversarial_family(n);
    ASSERT_EQ(h.num_vertices(), n);
    ASSERT_EQ(h.num_hyperedges(), 2u);
    EXPECT_EQ(h.core(), (std::vector<VertexId>{0, 1, 2}));
    const Point mid{kFamilyScale / 2, 0};
    for (VertexId v = 3; v < n; ++v) {
      EXPECT_LT(distance(h.position(v), mid), kFamilyRadius);
      EXPECT_EQ(h.membership(v).size(), 1u);
    }
  }
  EXPECT_THROW(adversarial_family(6), InvalidArgument);
}

TEST(AdversarialFamily, ColorsAlternateLeftToRight) {
  const Hypergraph h = adversarial_family(17);
  std::vector<VertexId> upper;
  for (VertexId v = 3; v < 17; ++v) {
    if (h.position(v).y > 0) upper.push_back(v);
  }
  std::sort(upper.begin(), upper.end(),
            [&](VertexId a, VertexId b) { return h.position(a).x < h.position(b).x; });
  for (std::size_t i = 1; i < upper.size(); ++i) {
    EXPECT_NE(h.membership(upper[i])[0], h.membership(upper[i - 1])[0]);
  }
}

TEST(AdversarialFamily, StarGrowsLocalSearchDoesNot) {
  double prev_ratio = 0;
  double first_ls = 0;
  for (std::size_t n : {8u, 16u, 32u}) {
    const Hypergraph h = adversarial_family(n);
    const double star = total_length(star_support(h), h);
    const double ls = local_search(h, ConstraintSet::U()).length;
    if (first_ls == 0) first_ls = ls;
    EXPECT_GT(star / ls, prev_ratio);
    prev_ratio = star / ls;
    // Local search stays within a constant multiple of the long core edge.
    EXPECT_LT(ls, 3 * kFamilyScale);
    // Star length grows roughly linearly: about one half-length spoke per vertex.
    EXPECT_GT(star, (n - 3) * (kFamilyScale / 2 - 1.5));
  }
  EXPECT_GT(prev_ratio, 2.0);
}
