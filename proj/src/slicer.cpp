#include "slicelab/slicer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <sstream>
#include <unordered_map>

#include "slicelab/equivalence.hpp"
#include "slicelab/regions.hpp"

namespace slicelab {

namespace {

// dF/dx2 - level sampled on the grid nodes.
struct Field {
  const GeneratingFamily& family;
  const Grid& grid;
  double level;
  std::vector<double> g;

  Field(const GeneratingFamily& f, const Grid& gr, double a) : family(f), grid(gr), level(a) {
    g.resize(static_cast<std::size_t>(grid.nx + 1) * (grid.ny + 1));
    for (int j = 0; j <= grid.ny; ++j)
      for (int i = 0; i <= grid.nx; ++i) g[index(i, j)] = family.gradient(grid.node(i, j)).y - a;
  }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * (grid.nx + 1) + i; }
  double at(int i, int j) const { return g[index(i, j)]; }
  double exact(Vec2 x) const { return family.gradient(x).y - level; }
};

// Throws when the level is within grid resolution of a critical value of dF/dx2.
void check_critical_levels(const Field& f) {
  static constexpr std::array<std::array<int, 2>, 8> ring{
      {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};
  for (int j = 1; j < f.grid.ny; ++j) {
    for (int i = 1; i < f.grid.nx; ++i) {
      const double c = f.at(i, j);
      double spread = 0.0;
      std::array<bool, 8> above{};
      for (int k = 0; k < 8; ++k) {
        const double d = f.at(i + ring[k][0], j + ring[k][1]) - c;
        spread = std::max(spread, std::abs(d));
        above[k] = d >= 0.0;
      }
      if (spread == 0.0 || std::abs(c) >= spread) continue;
      int changes = 0;
      for (int k = 0; k < 8; ++k) changes += above[k] != above[(k + 1) % 8];
      if (changes == 0 || changes >= 4) {
        std::ostringstream msg;
        msg << "level " << f.level << " is within grid resolution of critical value "
            << c + f.level << " of dF/dx2";
        throw NonGenericError(msg.str(), f.grid.node(i, j));
      }
    }
  }
}

class ContourTracer {
 public:
  explicit ContourTracer(const Field& f) : f_(f) {}

  std::vector<std::vector<Vec2>> trace() {
    const Grid& gr = f_.grid;
    for (int j = 0; j < gr.ny; ++j)
      for (int i = 0; i < gr.nx; ++i) add_cell(i, j);
    std::vector<std::vector<Vec2>> loops;
    while (!next_.empty()) {
      const std::size_t start = next_.begin()->first;
      std::vector<Vec2> loop;
      std::size_t e = start;
      while (true) {
        auto it = next_.find(e);
        if (it == next_.end()) throw InvalidInput("contour does not close inside the grid");
        loop.push_back(edge_point(e));
        const std::size_t n = it->second;
        next_.erase(it);
        e = n;
        if (e == start) break;
      }
      loops.push_back(std::move(loop));
    }
    return loops;
  }

 private:
  const Field& f_;
  std::unordered_map<std::size_t, std::size_t> next_;

  std::size_t hedge(int i, int j) const { return 2 * f_.index(i, j); }
  std::size_t vedge(int i, int j) const { return 2 * f_.index(i, j) + 1; }

  void add_cell(int i, int j) {
    const std::array<std::array<int, 2>, 4> corner{{{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}}};
    // Counterclockwise edges: corner k to corner k+1.
    const std::array<std::size_t, 4> edge{hedge(i, j), vedge(i + 1, j), hedge(i, j + 1), vedge(i, j)};
    std::array<bool, 4> in{};
    for (int k = 0; k < 4; ++k) in[k] = f_.at(corner[k][0], corner[k][1]) < 0.0;
    std::array<int, 4> out_edges{}, in_edges{};
    int n_out = 0, n_in = 0;
    for (int k = 0; k < 4; ++k) {
      if (in[k] && !in[(k + 1) % 4]) out_edges[n_out++] = k;
      if (!in[k] && in[(k + 1) % 4]) in_edges[n_in++] = k;
    }
    if (n_out == 0) return;
    bool center_inside = false;
    if (n_out == 2) {
      const Vec2 center = f_.grid.node(i, j) + Vec2{0.5 * f_.grid.hx(), 0.5 * f_.grid.hy()};
      center_inside = f_.exact(center) < 0.0;
    }
    // Inside stays on the left: pair each exit with the entry after it when
    // the inside is connected through the cell, otherwise with the one before.
    for (int a = 0; a < n_out; ++a) {
      const int k = out_edges[a];
      int best = -1;
      for (int step = 1; step < 4 && best < 0; ++step) {
        const int m = center_inside || n_out == 1 ? (k + step) % 4 : (k + 4 - step) % 4;
        for (int b = 0; b < n_in; ++b)
          if (in_edges[b] == m) best = m;
      }
      next_[edge[k]] = edge[best];
    }
  }

  Vec2 edge_point(std::size_t id) const {
    const std::size_t node = id / 2;
    const int i = static_cast<int>(node % (f_.grid.nx + 1));
    const int j = static_cast<int>(node / (f_.grid.nx + 1));
    const int i2 = (id % 2 == 0) ? i + 1 : i;
    const int j2 = (id % 2 == 0) ? j : j + 1;
    const Vec2 p0 = f_.grid.node(i, j), p1 = f_.grid.node(i2, j2);
    double t0 = 0.0, t1 = 1.0, g0 = f_.at(i, j), g1 = f_.at(i2, j2);
    // Illinois-style regula falsi on the exact field.
    double t = g0 / (g0 - g1);
    int side = 0;
    for (int it = 0; it < 40; ++it) {
      t = (t0 * g1 - t1 * g0) / (g1 - g0);
      const double gt = f_.exact(lerp(p0, p1, t));
      if (gt == 0.0 || t1 - t0 < 1e-14) break;
      if ((gt < 0.0) == (g0 < 0.0)) {
        t0 = t;
        g0 = gt;
        if (side == -1) g1 *= 0.5;
        side = -1;
      } else {
        t1 = t;
        g1 = gt;
        if (side == 1) g0 *= 0.5;
        side = 1;
      }
    }
    return lerp(p0, p1, t);
  }
};

}  // namespace

SliceResult extract_slice(const GeneratingFamily& family, double level, const Grid& grid,
                          const SlicerOptions& options) {
  if (!(level < 0.0)) throw InvalidInput("slice level must be negative");
  if (grid.nx < 16 || grid.ny < 16) throw InvalidInput("grid needs at least 16 cells per axis");
  SliceResult out;
  out.level = level;
  out.cell_size = std::max(grid.hx(), grid.hy());
  const double extent = std::hypot(grid.domain.width(), grid.domain.height());
  out.grid_tolerance = 16.0 * std::pow(out.cell_size / extent, 2);
  if (family.zero()) {
    out.diagram = SliceDiagram::assemble({}, {}, out.grid_tolerance);
    return out;
  }

  const Field field(family, grid, level);
  check_critical_levels(field);
  auto loops = ContourTracer(field).trace();

  std::vector<PlanarPolyline> comps;
  for (auto& loop : loops) {
    PlanarPolyline poly;
    std::vector<Vec2> kept;
    for (const Vec2& x : loop) {
      const Vec2 img{x.x, family.gradient(x).x};
      if (!poly.vertices.empty() && poly.vertices.back() == img) continue;
      poly.vertices.push_back(img);
      poly.lift.push_back(x.y);
      kept.push_back(x);
    }
    while (poly.vertices.size() > 1 && poly.vertices.back() == poly.vertices.front()) {
      poly.vertices.pop_back();
      poly.lift.pop_back();
      kept.pop_back();
    }
    if (kept.size() < 6)
      throw NonGenericError("contour under-resolved near a critical level", kept.front());
    loop = std::move(kept);
    comps.push_back(std::move(poly));
  }
  out.domain_loops = loops;

  CrossingOptions copt;
  const double min_dist = options.min_preimage_cells * out.cell_size;
  copt.accept = [&loops, min_dist](const StrandRef& a, const StrandRef& b) {
    auto pre = [&loops](const StrandRef& s) {
      const auto& l = loops[s.component];
      return lerp(l[s.segment], l[(s.segment + 1) % l.size()], s.t);
    };
    return norm(pre(a) - pre(b)) > min_dist;
  };
  out.diagram = SliceDiagram::build(std::move(comps), out.grid_tolerance, copt);
  out.validity = validity_report(out.diagram);
  // A slice curve has turning number zero, hence an odd number of self
  // crossings; anything else means double points were lost to the grid.
  std::vector<std::size_t> self(out.validity.size(), 0);
  for (const Crossing& x : out.diagram.crossings())
    if (x.self_crossing()) ++self[x.strands[0].component];
  for (std::size_t c = 0; c < out.validity.size(); ++c)
    if (!out.validity[c].winding_ok || self[c] % 2 == 0)
      throw NonGenericError("contour under-resolved: crossings lost at this grid size",
                            out.diagram.components()[c].vertices.front());
  out.classification = classify(out.diagram, options.classify_tolerance);
  return out;
}

// ------------------------------------------------------------ classification

namespace {

SliceDiagram single_component(const SliceDiagram& d, std::size_t c) {
  std::vector<Crossing> xs;
  for (Crossing x : d.crossings()) {
    if (x.strands[0].component != c) continue;
    x.strands[0].component = x.strands[1].component = 0;
    xs.push_back(x);
  }
  return SliceDiagram::assemble({d.components()[c]}, std::move(xs), d.tolerance());
}

std::optional<CatalogSpec> classify_component(const SliceDiagram& d, double rel_tol) {
  const EquivalenceKey key = equivalence_key(d);
  const std::size_t n = d.crossings().size();
  auto matches = [&](const CatalogSpec& spec) {
    try {
      return equivalent(equivalence_key(realize_catalog(spec)), key, rel_tol);
    } catch (const InvalidInput&) {
      return false;
    }
  };
  if (n == 1 && key.areas.size() == 2) {
    const double a = 0.5 * (key.areas[0] + key.areas[1]);
    for (int sign : {1, -1}) {
      const CatalogSpec spec = CatalogSpec::eight(sign, a);
      if (matches(spec)) return spec;
    }
    return std::nullopt;
  }
  if (n == 3 && key.areas.size() == 4) {
    std::array<double, 4> areas{key.areas[0], key.areas[1], key.areas[2], key.areas[3]};
    std::sort(areas.begin(), areas.end());
    const double scale = areas[3];
    do {
      if (std::abs(areas[0] - areas[1] + areas[2] - areas[3]) > rel_tol * scale) continue;
      for (int mask = 0; mask < 8; ++mask) {
        const std::array<int, 3> signs{mask & 1 ? -1 : 1, mask & 2 ? -1 : 1, mask & 4 ? -1 : 1};
        const CatalogSpec spec = CatalogSpec::cat(signs, areas[0], areas[1], areas[2]);
        if (matches(spec)) return spec;
      }
    } while (std::next_permutation(areas.begin(), areas.end()));
  }
  return std::nullopt;
}

}  // namespace

Classification classify(const SliceDiagram& diagram, double rel_tol) {
  Classification out;
  if (diagram.empty()) return out;
  out.label = out.shape = "unclassified";
  for (const Crossing& x : diagram.crossings())
    if (!x.self_crossing()) return out;

  // Summands ordered left to right.
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t c = 0; c < diagram.components().size(); ++c)
    order.push_back({bounding_box(diagram.components()[c].vertices).xmin, c});
  std::sort(order.begin(), order.end());

  std::vector<CatalogSpec> parts;
  for (const auto& [x, c] : order) {
    auto spec = classify_component(single_component(diagram, c), rel_tol);
    if (!spec) return out;
    parts.push_back(*spec);
  }
  CatalogSpec spec = parts.size() == 1 ? parts.front() : CatalogSpec::sum(parts);
  try {
    if (!equivalent(equivalence_key(realize_catalog(spec)), equivalence_key(diagram), rel_tol))
      return out;
  } catch (const InvalidInput&) {
    return out;
  }
  out.label = to_string(spec);
  out.shape = shape_string(spec);
  out.spec = std::move(spec);
  return out;
}

// ------------------------------------------------------------------ sweeps

std::string LevelSummary::descriptor() const {
  if (non_generic) return "non-generic";
  std::ostringstream os;
  os << shape << " [" << components << " components, " << crossings << " crossings]";
  return os.str();
}

LevelSummary summarize_level(const GeneratingFamily& family, double level, const Grid& grid) {
  LevelSummary s;
  s.level = level;
  try {
    const SliceResult r = extract_slice(family, level, grid);
    s.shape = r.classification.shape;
    s.label = r.classification.label;
    s.components = r.diagram.components().size();
    s.crossings = r.diagram.crossings().size();
    for (const auto& reg : regions(r.diagram)) s.areas.push_back(reg.area);
    std::sort(s.areas.begin(), s.areas.end());
  } catch (const NonGenericError& e) {
    s.non_generic = true;
    s.message = e.what();
    s.shape = s.label = "non-generic";
  }
  return s;
}

SweepResult sweep(const GeneratingFamily& family, double lo, double hi, int steps,
                  const Grid& grid) {
  if (!(lo < hi) || !(hi < 0.0)) throw InvalidInput("sweep requires lo < hi < 0");
  if (steps < 2) throw InvalidInput("sweep requires at least 2 steps");
  SweepResult out;
  std::vector<std::future<LevelSummary>> jobs;
  for (int k = 0; k < steps; ++k) {
    const double a = lo + (hi - lo) * k / (steps - 1);
    jobs.push_back(std::async(std::launch::async, [&family, &grid, a] {
      return summarize_level(family, a, grid);
    }));
  }
  for (auto& j : jobs) out.levels.push_back(j.get());

  const double resolution = 1e-3 * (hi - lo);
  for (std::size_t k = 0; k + 1 < out.levels.size(); ++k) {
    const std::string from = out.levels[k].descriptor();
    const std::string to = out.levels[k + 1].descriptor();
    if (from == to) continue;
    double a = out.levels[k].level, b = out.levels[k + 1].level;
    while (b - a > resolution) {
      const double mid = 0.5 * (a + b);
      (summarize_level(family, mid, grid).descriptor() == from ? a : b) = mid;
    }
    out.events.push_back({a, b, from, to});
  }
  return out;
}

Witness witness_relation(const GeneratingFamily& family, double a, double b, const Grid& grid) {
  if (!(a < b) || !(b < 0.0)) throw InvalidInput("witness requires a < b < 0");
  Witness w;
  w.bottom = extract_slice(family, a, grid);
  w.top = extract_slice(family, b, grid);
  w.verdict.kind = RelationVerdict::Kind::Witnessed;
  std::ostringstream ref;
  ref << "family slices at " << a << " < " << b;
  w.verdict.witness = ref.str();
  return w;
}

}  // namespace slicelab
