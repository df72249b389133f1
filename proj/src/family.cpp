#include "slicelab/family.hpp"

#include <algorithm>
#include <cmath>

namespace slicelab {

BumpJet bump(double u) {
  const double w = 1.0 - u * u;
  if (w <= 0.0) return {};
  BumpJet j;
  j.b = std::exp(-1.0 / w);
  const double g1 = -2.0 * u / (w * w);
  const double g2 = -2.0 / (w * w) - 8.0 * u * u / (w * w * w);
  j.db = j.b * g1;
  j.d2b = j.b * (g1 * g1 + g2);
  return j;
}

GeneratingFamily::GeneratingFamily(std::vector<BumpTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (!(t.s > 0.0) || !(t.t > 0.0)) throw InvalidInput("bump widths must be positive");
    if (!std::isfinite(t.c) || !std::isfinite(t.p) || !std::isfinite(t.q))
      throw InvalidInput("bump parameters must be finite");
  }
}

double GeneratingFamily::value(Vec2 x) const {
  double f = 0.0;
  for (const auto& t : terms_)
    f += t.c * bump((x.x - t.p) / t.s).b * bump((x.y - t.q) / t.t).b;
  return f;
}

Vec2 GeneratingFamily::gradient(Vec2 x) const {
  Vec2 g{0.0, 0.0};
  for (const auto& t : terms_) {
    const BumpJet u = bump((x.x - t.p) / t.s);
    const BumpJet v = bump((x.y - t.q) / t.t);
    g.x += t.c * u.db / t.s * v.b;
    g.y += t.c * u.b * v.db / t.t;
  }
  return g;
}

SecondPartials GeneratingFamily::hessian(Vec2 x) const {
  SecondPartials h;
  for (const auto& t : terms_) {
    const BumpJet u = bump((x.x - t.p) / t.s);
    const BumpJet v = bump((x.y - t.q) / t.t);
    h.f11 += t.c * u.d2b / (t.s * t.s) * v.b;
    h.f12 += t.c * u.db * v.db / (t.s * t.t);
    h.f22 += t.c * u.b * v.d2b / (t.t * t.t);
  }
  return h;
}

Box GeneratingFamily::support() const {
  if (terms_.empty()) return {-1.0, 1.0, -1.0, 1.0};
  Box b{terms_[0].p - terms_[0].s, terms_[0].p + terms_[0].s, terms_[0].q - terms_[0].t,
        terms_[0].q + terms_[0].t};
  for (const auto& t : terms_) {
    b.xmin = std::min(b.xmin, t.p - t.s);
    b.xmax = std::max(b.xmax, t.p + t.s);
    b.ymin = std::min(b.ymin, t.q - t.t);
    b.ymax = std::max(b.ymax, t.q + t.t);
  }
  return b;
}

std::vector<Vec2> partials(const GeneratingFamily& family, std::span<const Vec2> points) {
  std::vector<Vec2> out;
  out.reserve(points.size());
  for (const Vec2& p : points) out.push_back(family.gradient(p));
  return out;
}

Grid Grid::around(const GeneratingFamily& family, int cells) {
  if (cells < 16) throw InvalidInput("grid needs at least 16 cells per axis");
  const Box s = family.support();
  const double mx = 0.1 * s.width(), my = 0.1 * s.height();
  Grid g;
  g.domain = {s.xmin - mx * 1.0173, s.xmax + mx * 1.0419, s.ymin - my * 1.0291,
              s.ymax + my * 1.0067};
  g.nx = g.ny = cells;
  return g;
}

}  // namespace slicelab
