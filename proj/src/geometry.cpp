#include "slicelab/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace slicelab {

std::optional<SegmentHit> intersect_segments(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1) {
  const Vec2 r = p1 - p0;
  const Vec2 s = q1 - q0;
  const double den = cross(r, s);
  if (den == 0.0) return std::nullopt;
  const Vec2 qp = q0 - p0;
  const double t = cross(qp, s) / den;
  const double u = cross(qp, r) / den;
  if (t < 0.0 || t >= 1.0 || u < 0.0 || u >= 1.0) return std::nullopt;
  SegmentHit hit;
  hit.t = t;
  hit.u = u;
  hit.point = p0 + t * r;
  hit.sine = den / (norm(r) * norm(s));
  return hit;
}

double shoelace(std::span<const Vec2> pts) {
  const std::size_t n = pts.size();
  if (n < 3) return 0.0;
  // Shifted origin keeps the sum well conditioned for translated inputs.
  const Vec2 o = pts[0];
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = pts[i] - o;
    const Vec2 b = pts[(i + 1) % n] - o;
    acc += cross(a, b);
  }
  return 0.5 * acc;
}

double turning_number(std::span<const Vec2> pts) {
  const std::size_t n = pts.size();
  if (n < 3) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 d0 = pts[(i + 1) % n] - pts[i];
    const Vec2 d1 = pts[(i + 2) % n] - pts[(i + 1) % n];
    total += signed_angle(d0, d1);
  }
  return total / (2.0 * std::numbers::pi);
}

bool point_in_polygon(Vec2 p, std::span<const Vec2> poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

Box bounding_box(std::span<const Vec2> pts) {
  Box b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Vec2& p : pts) {
    b.xmin = std::min(b.xmin, p.x);
    b.xmax = std::max(b.xmax, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

}  // namespace slicelab
