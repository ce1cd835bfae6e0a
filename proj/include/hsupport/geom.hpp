#pragma once

#include <algorithm>
#include <cmath>

#include "hsupport/error.hpp"

namespace hsupport {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline bool is_finite(const Point& p) noexcept {
  return std::isfinite(p.x) && std::isfinite(p.y);
}

enum class Orientation { Clockwise = -1, Collinear = 0, CounterClockwise = 1 };

/// Cross products with magnitude at or below this are treated as collinear.
inline constexpr double kOrientTolerance = 1e-9;

/// (q - p) x (r - p)
inline double cross(const Point& p, const Point& q, const Point& r) noexcept {
  return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

inline Orientation orientation(const Point& p, const Point& q,
                               const Point& r) noexcept {
  const double c = cross(p, q, r);
  if (c > kOrientTolerance) return Orientation::CounterClockwise;
  if (c < -kOrientTolerance) return Orientation::Clockwise;
  return Orientation::Collinear;
}

inline double distance(const Point& p, const Point& q) noexcept {
  return std::hypot(q.x - p.x, q.y - p.y);
}

/// A straight-line segment with distinct endpoints.
class Segment {
 public:
  Segment(Point a, Point b) : a_(a), b_(b) {
    if (!is_finite(a) || !is_finite(b)) {
      throw InvalidArgument("segment endpoint is not finite");
    }
    if (a == b) throw InvalidArgument("zero-length segment");
  }

  const Point& a() const noexcept { return a_; }
  const Point& b() const noexcept { return b_; }

 private:
  Point a_;
  Point b_;
};

namespace detail {

// p is known to be collinear with s; test whether it lies within s's extent.
inline bool within_extent(const Segment& s, const Point& p) noexcept {
  return p.x <= std::max(s.a().x, s.b().x) + kOrientTolerance &&
         p.x >= std::min(s.a().x, s.b().x) - kOrientTolerance &&
         p.y <= std::max(s.a().y, s.b().y) + kOrientTolerance &&
         p.y >= std::min(s.a().y, s.b().y) - kOrientTolerance;
}

inline bool on_segment(const Segment& s, const Point& p) noexcept {
  return orientation(s.a(), s.b(), p) == Orientation::Collinear &&
         within_extent(s, p);
}

}  // namespace detail

/// True iff the segments share a point other than a common endpoint.
///
/// Two segments that meet only at one shared endpoint do not conflict.
/// Collinear overlap conflicts, and so does an endpoint touching the
/// interior of the other segment.
inline bool segments_conflict(const Segment& s1, const Segment& s2) noexcept {
  const bool aa = s1.a() == s2.a();
  const bool ab = s1.a() == s2.b();
  const bool ba = s1.b() == s2.a();
  const bool bb = s1.b() == s2.b();
  const int shared = int(aa) + int(ab) + int(ba) + int(bb);
  if (shared >= 2) return true;  // identical segments
  if (shared == 1) {
    const Point& other1 = (aa || ab) ? s1.b() : s1.a();
    const Point& other2 = (aa || ba) ? s2.b() : s2.a();
    // Meeting at the shared point only, unless they run along each other.
    return detail::on_segment(s1, other2) || detail::on_segment(s2, other1);
  }

  const Orientation o1 = orientation(s1.a(), s1.b(), s2.a());
  const Orientation o2 = orientation(s1.a(), s1.b(), s2.b());
  const Orientation o3 = orientation(s2.a(), s2.b(), s1.a());
  const Orientation o4 = orientation(s2.a(), s2.b(), s1.b());

  if (o1 != o2 && o3 != o4) return true;
  if (o1 == Orientation::Collinear && detail::within_extent(s1, s2.a())) return true;
  if (o2 == Orientation::Collinear && detail::within_extent(s1, s2.b())) return true;
  if (o3 == Orientation::Collinear && detail::within_extent(s2, s1.a())) return true;
  if (o4 == Orientation::Collinear && detail::within_extent(s2, s1.b())) return true;
  return false;
}

}  // namespace hsupport
