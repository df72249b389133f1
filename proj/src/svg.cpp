#include "slicelab/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "slicelab/regions.hpp"

namespace slicelab {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const SliceDiagram& diagram, const SvgOptions& options) {
  std::vector<Vec2> all;
  for (const auto& c : diagram.components()) all.insert(all.end(), c.vertices.begin(), c.vertices.end());
  Box box = all.empty() ? Box{-1, 1, -1, 1} : bounding_box(all);
  const double pad = 0.05 * std::max({box.width(), box.height(), 1e-9});
  box = {box.xmin - pad, box.xmax + pad, box.ymin - pad, box.ymax + pad};
  const double scale = options.width / box.width();
  const int height = std::max(1, static_cast<int>(box.height() * scale + 0.5));
  auto px = [&](Vec2 p) { return Vec2{(p.x - box.xmin) * scale, (box.ymax - p.y) * scale}; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << options.width << " " << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& c : diagram.components()) {
    os << "<path fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
      const Vec2 p = px(c.vertices[i]);
      os << (i ? " L" : "M") << fmt(p.x) << " " << fmt(p.y);
    }
    os << " Z\"/>\n";
  }
  // Break the under strand: blank it around the crossing, then redraw the over strand.
  for (const Crossing& x : diagram.crossings()) {
    if (x.over_strand < 0) continue;
    auto strand_dir = [&](int s) {
      const auto& ref = x.strands[s];
      const auto& poly = diagram.components()[ref.component];
      Vec2 d = px(poly.segment_end(ref.segment)) - px(poly.segment_start(ref.segment));
      const double n = norm(d);
      return n > 0 ? d * (1.0 / n) : Vec2{1, 0};
    };
    const Vec2 c = px(x.point);
    const Vec2 du = strand_dir(x.under_strand()) * options.under_gap_px;
    const Vec2 dov = strand_dir(x.over_strand) * (options.under_gap_px + 1.0);
    os << "<line stroke=\"white\" stroke-width=\"4\" x1=\"" << fmt((c - du).x) << "\" y1=\""
       << fmt((c - du).y) << "\" x2=\"" << fmt((c + du).x) << "\" y2=\"" << fmt((c + du).y)
       << "\"/>\n";
    os << "<line stroke=\"black\" stroke-width=\"1.5\" x1=\"" << fmt((c - dov).x) << "\" y1=\""
       << fmt((c - dov).y) << "\" x2=\"" << fmt((c + dov).x) << "\" y2=\"" << fmt((c + dov).y)
       << "\"/>\n";
  }
  if (options.area_labels) {
    for (const Region& r : regions(diagram)) {
      const Vec2 p = px(r.label);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4g", r.area);
      os << "<text x=\"" << fmt(p.x) << "\" y=\"" << fmt(p.y)
         << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#336\">" << buf << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace slicelab
