#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace slicelab {

/// Point or vector in the x1y1-plane.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 lerp(Vec2 a, Vec2 b, double t) { return a + t * (b - a); }

/// Thrown for inputs that violate a documented precondition.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a configuration is not in general position (tangency,
/// triple point, equal lifts, critical level).
class NonGenericError : public std::runtime_error {
 public:
  NonGenericError(const std::string& what, Vec2 where)
      : std::runtime_error(what), location(where) {}
  Vec2 location;
};

/// Proper intersection of segments [p0,p1] and [q0,q1] under the half-open
/// convention t, u in [0, 1).
struct SegmentHit {
  double t = 0.0;
  double u = 0.0;
  Vec2 point;
  double sine = 0.0;  // sin of the angle between the segments
};

std::optional<SegmentHit> intersect_segments(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1);

/// Shoelace area of the closed polygon through `pts` (last vertex joins the
/// first). Counterclockwise is positive.
double shoelace(std::span<const Vec2> pts);

/// Sum of signed exterior angles of the closed polygon, divided by 2π.
double turning_number(std::span<const Vec2> pts);

/// Signed angle in (-π, π] rotating a onto b.
inline double signed_angle(Vec2 a, Vec2 b) { return std::atan2(cross(a, b), dot(a, b)); }

bool point_in_polygon(Vec2 p, std::span<const Vec2> poly);

struct Box {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
};

Box bounding_box(std::span<const Vec2> pts);

}  // namespace slicelab
