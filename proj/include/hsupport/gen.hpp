#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hsupport/error.hpp"
#include "hsupport/geom.hpp"
#include "hsupport/model.hpp"

namespace hsupport {

enum class DegreeScheme { Even, Mid, Low, High };

inline std::string to_string(DegreeScheme s) {
  switch (s) {
    case DegreeScheme::Even: return "even";
    case DegreeScheme::Mid: return "mid";
    case DegreeScheme::Low: return "low";
    case DegreeScheme::High: return "high";
  }
  return "?";
}

inline DegreeScheme parse_scheme(std::string_view text) {
  std::string s(text);
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "even") return DegreeScheme::Even;
  if (s == "mid") return DegreeScheme::Mid;
  if (s == "low") return DegreeScheme::Low;
  if (s == "high") return DegreeScheme::High;
  throw InvalidArgument("unknown degree scheme '" + std::string(text) + "'");
}

/// Seeded source of uniform and normal draws. Same seed, same stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal(double mean, double stddev) {
    return std::normal_distribution<double>(mean, stddev)(engine_);
  }
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

 private:
  std::mt19937_64 engine_;
};

// The normal parameters below are read as standard deviations.
inline constexpr double kMidMean = 0.5;
inline constexpr double kMidStddev = 2.0 / 9.0;
inline constexpr double kTailStddev = 2.0 / 5.0;

/// How many vertices of each degree to generate; degree i is at index i-1.
class DegreeArray {
 public:
  explicit DegreeArray(std::size_t k) : counts_(k, 0) {
    if (k == 0) throw InvalidArgument("degree array needs k >= 1");
  }
  DegreeArray(std::initializer_list<std::size_t> counts) : counts_(counts) {
    if (counts_.empty()) throw InvalidArgument("degree array needs k >= 1");
  }

  std::size_t k() const noexcept { return counts_.size(); }
  std::size_t& operator[](std::size_t degree) { return counts_.at(degree - 1); }
  std::size_t operator[](std::size_t degree) const { return counts_.at(degree - 1); }

  std::size_t vertices() const {
    std::size_t sum = 0;
    for (auto c : counts_) sum += c;
    return sum;
  }
  std::size_t incidences() const {
    std::size_t sum = 0;
    for (std::size_t i = 0; i < counts_.size(); ++i) sum += (i + 1) * counts_[i];
    return sum;
  }

  const std::vector<std::size_t>& counts() const noexcept { return counts_; }
  friend bool operator==(const DegreeArray&, const DegreeArray&) = default;

 private:
  std::vector<std::size_t> counts_;
};

/// Draws one degree in [1, k] for a normal-based scheme; out-of-range
/// mappings are redrawn.
inline std::size_t draw_degree(DegreeScheme scheme, std::size_t k, Rng& rng) {
  const double kd = static_cast<double>(k);
  for (;;) {
    double d = 0.0;
    switch (scheme) {
      case DegreeScheme::Mid:
        d = 1.0 + std::floor(kd * rng.normal(kMidMean, kMidStddev));
        break;
      case DegreeScheme::Low:
        d = 1.0 + std::floor(kd * std::abs(rng.normal(0.0, kTailStddev)));
        break;
      case DegreeScheme::High:
        d = kd - std::floor(kd * std::abs(rng.normal(0.0, kTailStddev)));
        break;
      case DegreeScheme::Even:
        throw InvalidArgument("even scheme has no random degree");
    }
    if (d >= 1.0 && d <= kd) return static_cast<std::size_t>(d);
  }
}

/// Makes sure some vertex has degree k by demoting one vertex of the highest
/// present degree.
inline void ensure_full_degree(DegreeArray& d) {
  const std::size_t k = d.k();
  if (d[k] != 0) return;
  for (std::size_t i = k; i >= 1; --i) {
    if (d[i] > 0) {
      --d[i];
      break;
    }
  }
  d[k] = 1;
}

/// Raises the lowest degrees until the degree sum reaches 2k.
inline void ensure_min_incidence(DegreeArray& d) {
  const std::size_t k = d.k();
  while (d.incidences() < 2 * k) {
    std::size_t i = 1;
    while (i <= k && d[i] == 0) ++i;
    if (i >= k) throw InvalidArgument("cannot reach 2k incidences");
    --d[i];
    ++d[i + 1];
  }
}

inline DegreeArray degree_array(std::size_t n, std::size_t k, DegreeScheme scheme,
                                Rng& rng) {
  if (n < 2) throw InvalidArgument("need at least 2 vertices");
  if (k < 1) throw InvalidArgument("need at least 1 hyperedge");
  DegreeArray d(k);
  if (scheme == DegreeScheme::Even) {
    for (std::size_t i = 1; i <= k; ++i) d[i] = n / k + (i <= n % k ? 1 : 0);
  } else {
    for (std::size_t v = 0; v < n; ++v) ++d[draw_degree(scheme, k, rng)];
  }
  ensure_full_degree(d);
  ensure_min_incidence(d);
  return d;
}

namespace detail {

// Picks `count` distinct items uniformly from `pool` (partial Fisher-Yates).
inline std::vector<HyperedgeId> sample(std::vector<HyperedgeId> pool, std::size_t count,
                                       Rng& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(pool[i], pool[i + rng.index(pool.size() - i)]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace detail

/// Random spatial hypergraph with n vertices in [0,100)^2 and k hyperedges.
///
/// Every hyperedge gets at least two vertices and at least one vertex lies in
/// all hyperedges. Vertex degrees come from the scheme's degree array; each
/// vertex joins hyperedges that still have fewer than two members first.
inline Hypergraph generate(std::size_t n, std::size_t k, DegreeScheme scheme, Rng& rng) {
  const DegreeArray degrees = degree_array(n, k, scheme, rng);
  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    DegreeArray left = degrees;
    std::vector<Point> pos;
    std::vector<std::vector<VertexId>> members(k);
    while (left.vertices() > 0) {
      std::vector<std::size_t> nonzero;
      for (std::size_t i = 1; i <= k; ++i) {
        if (left[i] > 0) nonzero.push_back(i);
      }
      const std::size_t deg = nonzero[rng.index(nonzero.size())];

      Point p;
      do {
        p = {rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)};
      } while (std::find(pos.begin(), pos.end(), p) != pos.end());
      const auto id = static_cast<VertexId>(pos.size());
      pos.push_back(p);

      std::vector<HyperedgeId> under, rest;
      for (HyperedgeId s = 0; s < k; ++s) {
        (members[s].size() < 2 ? under : rest).push_back(s);
      }
      std::vector<HyperedgeId> picked;
      if (under.size() >= deg) {
        picked = detail::sample(std::move(under), deg, rng);
      } else {
        picked = std::move(under);
        auto more = detail::sample(std::move(rest), deg - picked.size(), rng);
        picked.insert(picked.end(), more.begin(), more.end());
      }
      for (HyperedgeId s : picked) members[s].push_back(id);
      --left[deg];
    }
    const bool ok = std::all_of(members.begin(), members.end(),
                                [](const auto& m) { return m.size() >= 2; });
    if (ok) return Hypergraph(std::move(pos), std::move(members));
  }
  throw InvalidArgument("could not place two vertices in every hyperedge");
}

// Geometry of the two-hyperedge family where the core EMST forces long
// spokes: u and v span the long core edge, w sits just off v, and the
// remaining vertices alternate colours on two mirrored convex arcs inside a
// small disk left of the midpoint of uv.
inline constexpr double kFamilyScale = 40.0;      // |uv|
inline constexpr double kFamilyRadius = 1.0;      // disk radius
inline constexpr double kFamilyCenterX = 19.5;    // arc centre, left of the uv midpoint
inline constexpr double kFamilyWHeight = 3.0;     // w = (scale, height)
inline constexpr double kFamilyArcRadius = 0.45;  // arcs stay within the disk around the midpoint

/// Vertices 0, 1, 2 are u, v, w and form the core; hyperedge 0 and 1 hold
/// alternating arc vertices, ordered left to right on each arc.
inline Hypergraph adversarial_family(std::size_t n) {
  if (n < 7) throw InvalidArgument("adversarial family needs n >= 7");
  std::vector<Point> pos = {{0.0, 0.0}, {kFamilyScale, 0.0}, {kFamilyScale, kFamilyWHeight}};
  std::vector<std::vector<VertexId>> members = {{0, 1, 2}, {0, 1, 2}};

  const std::size_t chain = n - 3;
  const std::size_t upper = (chain + 1) / 2;
  const std::size_t lower = chain / 2;
  // The lower arc mirrors the first `lower` upper vertices.
  auto place_arc = [&](std::size_t count, double sign) {
    for (std::size_t i = 0; i < count; ++i) {
      // Angles sweep from 150 to 30 degrees so x increases along the arc.
      const double t = upper == 1 ? 0.5 : static_cast<double>(i) / double(upper - 1);
      const double angle = (150.0 - 120.0 * t) * std::numbers::pi / 180.0;
      const auto id = static_cast<VertexId>(pos.size());
      pos.push_back({kFamilyCenterX + kFamilyArcRadius * std::cos(angle),
                     sign * kFamilyArcRadius * std::sin(angle)});
      members[i % 2].push_back(id);
    }
  };
  place_arc(upper, 1.0);
  place_arc(lower, -1.0);
  return Hypergraph(std::move(pos), std::move(members));
}

}  // namespace hsupport
