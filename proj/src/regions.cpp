#include "slicelab/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace slicelab {

namespace {

struct HalfEdge {
  std::vector<Vec2> points;
  std::size_t origin = 0;  // crossing index, or npos for a crossing-free loop
  double angle = 0.0;
  std::size_t next = 0;
};

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Cycle {
  std::vector<Vec2> polygon;
  double area = 0.0;
  std::size_t group = 0;
};

// Midpoint of the widest interior interval over a few horizontal scanlines.
Vec2 interior_point(const std::vector<Vec2>& poly) {
  const Box box = bounding_box(poly);
  Vec2 best{(box.xmin + box.xmax) / 2, (box.ymin + box.ymax) / 2};
  double best_width = -1.0;
  for (int k = 1; k < 16; ++k) {
    const double y = box.ymin + box.height() * k / 16.0;
    std::vector<double> xs;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
      const Vec2 a = poly[i], b = poly[j];
      if ((a.y > y) != (b.y > y)) xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
      if (xs[i + 1] - xs[i] > best_width) {
        best_width = xs[i + 1] - xs[i];
        best = {(xs[i] + xs[i + 1]) / 2, y};
      }
    }
  }
  return best;
}

}  // namespace

std::vector<Region> regions(const SliceDiagram& diagram) {
  std::size_t group_count = 0;
  const auto groups = linked_groups(diagram, &group_count);
  const auto occ = occurrences(diagram);

  std::vector<HalfEdge> edges;
  std::vector<Cycle> cycles;

  for (std::size_t c = 0; c < diagram.components().size(); ++c) {
    const auto& poly = diagram.components()[c];
    const auto& list = occ[c];
    if (list.empty()) {
      Cycle fwd{poly.vertices, shoelace(poly.vertices), groups[c]};
      Cycle rev{{poly.vertices.rbegin(), poly.vertices.rend()}, 0.0, groups[c]};
      rev.area = -fwd.area;
      cycles.push_back(std::move(fwd));
      cycles.push_back(std::move(rev));
      continue;
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Occurrence& from = list[i];
      const Occurrence& to = list[(i + 1) % list.size()];
      HalfEdge f;
      f.points = forward_path(poly, from.param, to.param);
      f.origin = from.crossing;
      HalfEdge r;
      r.points.assign(f.points.rbegin(), f.points.rend());
      r.origin = to.crossing;
      edges.push_back(std::move(f));
      edges.push_back(std::move(r));
    }
  }

  // Outgoing half-edges at each crossing, sorted counterclockwise.
  std::map<std::size_t, std::vector<std::size_t>> around;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Vec2 d = edges[e].points[1] - edges[e].points[0];
    edges[e].angle = std::atan2(d.y, d.x);
    around[edges[e].origin].push_back(e);
  }
  for (auto& [v, list] : around)
    std::sort(list.begin(), list.end(),
              [&](std::size_t a, std::size_t b) { return edges[a].angle < edges[b].angle; });

  // Face on the left: the successor of h is the clockwise neighbour of its twin.
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::size_t twin = e ^ 1u;
    const auto& list = around[edges[twin].origin];
    const auto pos = std::find(list.begin(), list.end(), twin) - list.begin();
    edges[e].next = list[(pos + list.size() - 1) % list.size()];
  }

  std::vector<bool> seen(edges.size(), false);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (seen[e]) continue;
    Cycle cyc;
    std::size_t h = e;
    while (!seen[h]) {
      seen[h] = true;
      const auto& pts = edges[h].points;
      cyc.polygon.insert(cyc.polygon.end(), pts.begin(), pts.end() - 1);
      h = edges[h].next;
    }
    cyc.area = shoelace(cyc.polygon);
    const auto& x = diagram.crossings()[edges[e].origin];
    cyc.group = groups[x.strands[0].component];
    cycles.push_back(std::move(cyc));
  }

  std::vector<Region> out;
  std::vector<std::size_t> positive;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    if (cycles[i].area > 0.0) {
      positive.push_back(i);
      Region r;
      r.outer_area = r.area = cycles[i].area;
      r.boundary = cycles[i].polygon;
      r.label = interior_point(r.boundary);
      out.push_back(std::move(r));
    }
  }
  // Each outer boundary (negative cycle) is a hole in the smallest positive
  // cycle of another group containing it.
  for (const Cycle& hole : cycles) {
    if (hole.area >= 0.0) continue;
    std::size_t best = npos;
    for (std::size_t k = 0; k < positive.size(); ++k) {
      const Cycle& host = cycles[positive[k]];
      if (host.group == hole.group) continue;
      if (!point_in_polygon(hole.polygon.front(), host.polygon)) continue;
      if (best == npos || host.area < out[best].outer_area) best = k;
    }
    if (best != npos) out[best].area += hole.area;
  }
  return out;
}

}  // namespace slicelab
