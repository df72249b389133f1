#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "slicelab/geometry.hpp"

namespace slicelab {

/// Closed (or open) polyline in the x1y1-plane with an optional x2-lift
/// sampled at the vertices and interpolated linearly along segments.
struct PlanarPolyline {
  std::vector<Vec2> vertices;
  bool closed = true;
  std::vector<double> lift;

  bool lifted() const { return !lift.empty(); }
  std::size_t segment_count() const {
    return closed ? vertices.size() : (vertices.empty() ? 0 : vertices.size() - 1);
  }
  Vec2 segment_start(std::size_t i) const { return vertices[i]; }
  Vec2 segment_end(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }
  Vec2 point_at(std::size_t segment, double t) const {
    return lerp(segment_start(segment), segment_end(segment), t);
  }
  double lift_at(std::size_t segment, double t) const;

  /// Throws InvalidInput on a structural violation.
  void validate() const;
};

/// A location on a component: segment index plus fraction along it.
struct StrandRef {
  std::size_t component = 0;
  std::size_t segment = 0;
  double t = 0.0;

  double param() const { return static_cast<double>(segment) + t; }
};

struct Crossing {
  Vec2 point;
  std::array<StrandRef, 2> strands;
  int over_strand = -1;  // -1 when the components carry no lift
  int sign = 0;          // +1 / -1, 0 when unlifted
  double lift_gap = 0.0;

  bool self_crossing() const { return strands[0].component == strands[1].component; }
  int under_strand() const { return over_strand < 0 ? -1 : 1 - over_strand; }
};

struct CrossingOptions {
  /// Transversality threshold on |sin angle| between crossing segments.
  double min_sine = 1e-9;
  /// Two crossings closer than this are treated as a triple point.
  double min_separation = 1e-12;
  /// Lifts closer than this at a crossing are rejected.
  double min_lift_gap = 1e-12;
  /// Optional filter deciding whether a detected intersection is genuine.
  std::function<bool(const StrandRef&, const StrandRef&)> accept;
};

/// All pairwise and self intersections of the components.
/// Throws NonGenericError on tangencies, triple points, or equal lifts.
std::vector<Crossing> detect_crossings(std::span<const PlanarPolyline> components,
                                       const CrossingOptions& options = {});

/// Orientation-signed enclosed area. Throws InvalidInput for open polylines.
double signed_area(const PlanarPolyline& polyline);

/// Crossing sign from the two strand tangents: sign of det[t_over, t_under].
int crossing_sign(Vec2 over_tangent, Vec2 under_tangent);

class SliceDiagram {
 public:
  SliceDiagram() = default;

  /// Validates the components and computes their crossings.
  static SliceDiagram build(std::vector<PlanarPolyline> components, double tolerance = 1e-9,
                            const CrossingOptions& options = {});

  /// Assembles a diagram whose crossings are already known.
  static SliceDiagram assemble(std::vector<PlanarPolyline> components,
                               std::vector<Crossing> crossings, double tolerance);

  const std::vector<PlanarPolyline>& components() const { return components_; }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  double tolerance() const { return tolerance_; }
  bool empty() const { return components_.empty(); }

  /// Length scale of the diagram (bounding box diagonal), 1 when empty.
  double scale() const;

 private:
  std::vector<PlanarPolyline> components_;
  std::vector<Crossing> crossings_;
  double tolerance_ = 1e-9;
};

struct ComponentValidity {
  double signed_area = 0.0;
  double area_residual = 0.0;  // |area| relative to the bounding-box area
  bool area_ok = false;
  double turning = 0.0;
  double winding_residual = 0.0;  // distance of the turning number from 0
  bool winding_ok = false;
};

std::vector<ComponentValidity> validity_report(const SliceDiagram& diagram);
bool all_valid(std::span<const ComponentValidity> report);

/// 2x2 linear map plus translation applied to every vertex.
struct Affine2 {
  double a = 1, b = 0, c = 0, d = 1;
  double tx = 0, ty = 0;

  Vec2 apply(Vec2 p) const { return {a * p.x + b * p.y + tx, c * p.x + d * p.y + ty}; }
  double det() const { return a * d - b * c; }
};

SliceDiagram transformed(const SliceDiagram& diagram, const Affine2& map);
SliceDiagram translated(const SliceDiagram& diagram, Vec2 offset);

/// Monoid sum: first summand placed in x1 < 0, second in x1 > 0.
SliceDiagram sum(const SliceDiagram& left, const SliceDiagram& right);

/// Crossing occurrences along one component, ordered by arc parameter.
struct Occurrence {
  double param = 0.0;
  std::size_t crossing = 0;
  int strand = 0;
};

std::vector<std::vector<Occurrence>> occurrences(const SliceDiagram& diagram);

/// Number of components linked to each other through crossings, with the
/// group index of every component.
std::vector<std::size_t> linked_groups(const SliceDiagram& diagram, std::size_t* group_count);

/// Points of the path along `poly` that starts at parameter `from` and moves
/// forward (with wraparound) to parameter `to`. When `from == to` the path
/// runs once around the whole component. Endpoints are included.
std::vector<Vec2> forward_path(const PlanarPolyline& poly, double from, double to);

}  // namespace slicelab
