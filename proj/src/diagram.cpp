#include "slicelab/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace slicelab {

double PlanarPolyline::lift_at(std::size_t segment, double t) const {
  const double a = lift[segment];
  const double b = lift[(segment + 1) % lift.size()];
  return a + t * (b - a);
}

void PlanarPolyline::validate() const {
  if (closed && vertices.size() < 3) throw InvalidInput("closed polyline needs at least 3 vertices");
  if (!closed && vertices.size() < 2) throw InvalidInput("open polyline needs at least 2 vertices");
  for (std::size_t i = 0; i < segment_count(); ++i) {
    if (segment_start(i) == segment_end(i)) {
      std::ostringstream msg;
      msg << "repeated consecutive vertex at index " << i;
      throw InvalidInput(msg.str());
    }
  }
  if (lifted() && lift.size() != vertices.size())
    throw InvalidInput("lift must have one entry per vertex");
  for (const Vec2& v : vertices)
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw InvalidInput("non-finite vertex");
}

int crossing_sign(Vec2 over_tangent, Vec2 under_tangent) {
  return cross(over_tangent, under_tangent) > 0.0 ? +1 : -1;
}

namespace {

struct SegmentBox {
  std::size_t component;
  std::size_t segment;
  double xmin, xmax, ymin, ymax;
};

bool adjacent(const PlanarPolyline& poly, std::size_t i, std::size_t j) {
  if (i == j) return true;
  const std::size_t n = poly.segment_count();
  const std::size_t lo = std::min(i, j), hi = std::max(i, j);
  if (hi - lo == 1) return true;
  return poly.closed && lo == 0 && hi == n - 1;
}

}  // namespace

std::vector<Crossing> detect_crossings(std::span<const PlanarPolyline> components,
                                       const CrossingOptions& options) {
  std::vector<SegmentBox> boxes;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& poly = components[c];
    for (std::size_t s = 0; s < poly.segment_count(); ++s) {
      const Vec2 a = poly.segment_start(s), b = poly.segment_end(s);
      boxes.push_back({c, s, std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y),
                       std::max(a.y, b.y)});
    }
  }
  std::sort(boxes.begin(), boxes.end(),
            [](const SegmentBox& l, const SegmentBox& r) { return l.xmin < r.xmin; });

  std::vector<Crossing> out;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const SegmentBox& bi = boxes[i];
    for (std::size_t j = i + 1; j < boxes.size() && boxes[j].xmin <= bi.xmax; ++j) {
      const SegmentBox& bj = boxes[j];
      if (bj.ymin > bi.ymax || bj.ymax < bi.ymin) continue;
      // Canonical strand order: lower (component, segment) first.
      const bool swap = std::tie(bj.component, bj.segment) < std::tie(bi.component, bi.segment);
      const SegmentBox& first = swap ? bj : bi;
      const SegmentBox& second = swap ? bi : bj;
      if (first.component == second.component &&
          adjacent(components[first.component], first.segment, second.segment))
        continue;
      const auto& p = components[first.component];
      const auto& q = components[second.component];
      auto hit = intersect_segments(p.segment_start(first.segment), p.segment_end(first.segment),
                                    q.segment_start(second.segment), q.segment_end(second.segment));
      if (!hit) continue;
      Crossing x;
      x.point = hit->point;
      x.strands = {StrandRef{first.component, first.segment, hit->t},
                   StrandRef{second.component, second.segment, hit->u}};
      if (options.accept && !options.accept(x.strands[0], x.strands[1])) continue;
      if (std::abs(hit->sine) < options.min_sine)
        throw NonGenericError("tangency between strands", x.point);
      out.push_back(x);
    }
  }

  std::sort(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) {
    return std::tie(a.strands[0].component, a.strands[0].segment, a.strands[0].t,
                    a.strands[1].component, a.strands[1].segment) <
           std::tie(b.strands[0].component, b.strands[0].segment, b.strands[0].t,
                    b.strands[1].component, b.strands[1].segment);
  });

  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (norm(out[i].point - out[j].point) < options.min_separation)
        throw NonGenericError("triple point", out[i].point);

  for (Crossing& x : out) {
    const auto& p = components[x.strands[0].component];
    const auto& q = components[x.strands[1].component];
    if (!p.lifted() || !q.lifted()) continue;
    const double l0 = p.lift_at(x.strands[0].segment, x.strands[0].t);
    const double l1 = q.lift_at(x.strands[1].segment, x.strands[1].t);
    x.lift_gap = std::abs(l0 - l1);
    if (x.lift_gap <= options.min_lift_gap)
      throw NonGenericError("equal lifts at crossing", x.point);
    x.over_strand = l0 > l1 ? 0 : 1;
    const auto& over = components[x.strands[x.over_strand].component];
    const auto& under = components[x.strands[1 - x.over_strand].component];
    const auto& so = x.strands[x.over_strand];
    const auto& su = x.strands[1 - x.over_strand];
    x.sign = crossing_sign(over.segment_end(so.segment) - over.segment_start(so.segment),
                           under.segment_end(su.segment) - under.segment_start(su.segment));
  }
  return out;
}

double signed_area(const PlanarPolyline& polyline) {
  if (!polyline.closed) throw InvalidInput("signed area requires a closed polyline");
  return shoelace(polyline.vertices);
}

SliceDiagram SliceDiagram::build(std::vector<PlanarPolyline> components, double tolerance,
                                 const CrossingOptions& options) {
  for (const auto& c : components) {
    c.validate();
    if (!c.closed) throw InvalidInput("slice components must be closed");
  }
  auto crossings = detect_crossings(components, options);
  return assemble(std::move(components), std::move(crossings), tolerance);
}

SliceDiagram SliceDiagram::assemble(std::vector<PlanarPolyline> components,
                                    std::vector<Crossing> crossings, double tolerance) {
  SliceDiagram d;
  d.components_ = std::move(components);
  d.crossings_ = std::move(crossings);
  d.tolerance_ = tolerance;
  return d;
}

double SliceDiagram::scale() const {
  std::vector<Vec2> all;
  for (const auto& c : components_) all.insert(all.end(), c.vertices.begin(), c.vertices.end());
  if (all.empty()) return 1.0;
  const Box b = bounding_box(all);
  const double s = std::hypot(b.width(), b.height());
  return s > 0.0 ? s : 1.0;
}

std::vector<ComponentValidity> validity_report(const SliceDiagram& diagram) {
  std::vector<ComponentValidity> out;
  for (const auto& c : diagram.components()) {
    ComponentValidity v;
    v.signed_area = signed_area(c);
    const Box b = bounding_box(c.vertices);
    const double box_area = std::max(b.width() * b.height(), 1e-300);
    v.area_residual = std::abs(v.signed_area) / box_area;
    v.area_ok = v.area_residual <= diagram.tolerance();
    v.turning = turning_number(c.vertices);
    v.winding_residual = std::abs(v.turning);
    v.winding_ok = v.winding_residual < 1e-6;
    out.push_back(v);
  }
  return out;
}

bool all_valid(std::span<const ComponentValidity> report) {
  return std::all_of(report.begin(), report.end(),
                     [](const ComponentValidity& v) { return v.area_ok && v.winding_ok; });
}

SliceDiagram transformed(const SliceDiagram& diagram, const Affine2& map) {
  std::vector<PlanarPolyline> comps = diagram.components();
  for (auto& c : comps)
    for (auto& v : c.vertices) v = map.apply(v);
  return SliceDiagram::build(std::move(comps), diagram.tolerance());
}

SliceDiagram translated(const SliceDiagram& diagram, Vec2 offset) {
  std::vector<PlanarPolyline> comps = diagram.components();
  for (auto& c : comps)
    for (auto& v : c.vertices) v = v + offset;
  std::vector<Crossing> xs = diagram.crossings();
  for (auto& x : xs) x.point = x.point + offset;
  return SliceDiagram::assemble(std::move(comps), std::move(xs), diagram.tolerance());
}

namespace {

Box diagram_box(const SliceDiagram& d) {
  std::vector<Vec2> all;
  for (const auto& c : d.components()) all.insert(all.end(), c.vertices.begin(), c.vertices.end());
  return bounding_box(all);
}

}  // namespace

SliceDiagram sum(const SliceDiagram& left, const SliceDiagram& right) {
  if (left.empty()) return right;
  if (right.empty()) return left;
  const Box bl = diagram_box(left), br = diagram_box(right);
  const double gap = 0.1 * std::max({bl.width(), br.width(), bl.height(), br.height()});
  const SliceDiagram l = translated(left, {-gap / 2 - bl.xmax, 0.0});
  const SliceDiagram r = translated(right, {gap / 2 - br.xmin, 0.0});

  std::vector<PlanarPolyline> comps = l.components();
  comps.insert(comps.end(), r.components().begin(), r.components().end());
  std::vector<Crossing> xs = l.crossings();
  const std::size_t shift = l.components().size();
  for (Crossing x : r.crossings()) {
    x.strands[0].component += shift;
    x.strands[1].component += shift;
    xs.push_back(x);
  }
  return SliceDiagram::assemble(std::move(comps), std::move(xs),
                                std::max(left.tolerance(), right.tolerance()));
}

std::vector<std::vector<Occurrence>> occurrences(const SliceDiagram& diagram) {
  std::vector<std::vector<Occurrence>> out(diagram.components().size());
  for (std::size_t i = 0; i < diagram.crossings().size(); ++i) {
    const Crossing& x = diagram.crossings()[i];
    for (int s = 0; s < 2; ++s)
      out[x.strands[s].component].push_back({x.strands[s].param(), i, s});
  }
  for (auto& list : out)
    std::sort(list.begin(), list.end(),
              [](const Occurrence& a, const Occurrence& b) { return a.param < b.param; });
  return out;
}

std::vector<std::size_t> linked_groups(const SliceDiagram& diagram, std::size_t* group_count) {
  const std::size_t n = diagram.components().size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const Crossing& x : diagram.crossings())
    parent[find(x.strands[0].component)] = find(x.strands[1].component);
  std::vector<std::size_t> label(n, n), group(n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (label[r] == n) label[r] = next++;
    group[i] = label[r];
  }
  if (group_count) *group_count = next;
  return group;
}

std::vector<Vec2> forward_path(const PlanarPolyline& poly, double from, double to) {
  const std::size_t n = poly.vertices.size();
  const auto sf = static_cast<std::size_t>(std::floor(from));
  const auto st = static_cast<std::size_t>(std::floor(to));
  const Vec2 start = poly.point_at(sf, from - static_cast<double>(sf));
  const Vec2 end = poly.point_at(st, to - static_cast<double>(st));

  std::vector<Vec2> pts{start};
  auto push = [&](Vec2 p) {
    if (!(pts.back() == p)) pts.push_back(p);
  };
  std::size_t count;
  if (to > from)
    count = st - sf;
  else
    count = n - sf + st;  // wraps; equals n when from == to
  for (std::size_t k = 1; k <= count; ++k) push(poly.vertices[(sf + k) % n]);
  push(end);
  return pts;
}

}  // namespace slicelab
