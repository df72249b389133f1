#include "slicelab/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "slicelab/regions.hpp"

namespace slicelab {

CatalogSpec CatalogSpec::eight(int sign, double area) {
  CatalogSpec s;
  s.kind = sign > 0 ? CatalogKind::EightPlus : CatalogKind::EightMinus;
  s.areas = {area};
  return s;
}

CatalogSpec CatalogSpec::cat(std::array<int, 3> signs, double a1, double a2, double a3) {
  CatalogSpec s;
  s.kind = CatalogKind::Cat;
  s.signs = signs;
  s.areas = {a1, a2, a3};
  return s;
}

CatalogSpec CatalogSpec::sum(std::vector<CatalogSpec> parts) {
  CatalogSpec s;
  s.kind = CatalogKind::Sum;
  s.children = std::move(parts);
  return s;
}

CatalogSpec CatalogSpec::nest(CatalogSpec inner, CatalogSpec outer) {
  CatalogSpec s;
  s.kind = CatalogKind::Nest;
  s.children = {std::move(inner), std::move(outer)};
  return s;
}

CatalogSpec CatalogSpec::merge(double a1, double a2, double a3) {
  CatalogSpec s;
  s.kind = CatalogKind::Merge;
  s.areas = {a1, a2, a3};
  return s;
}

CatalogSyntaxError::CatalogSyntaxError(const std::string& what, std::size_t pos)
    : InvalidInput(what + " at position " + std::to_string(pos)), position(pos) {}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  CatalogSpec parse() {
    CatalogSpec e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw CatalogSyntaxError(what, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(std::string_view tok) {
    skip();
    return text_.substr(pos_, tok.size()) == tok;
  }

  void expect(std::string_view tok) {
    if (!peek(tok)) fail("expected '" + std::string(tok) + "'");
    pos_ += tok.size();
  }

  double number() {
    skip();
    double v = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) fail("expected number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  int sign() {
    if (peek("+")) {
      ++pos_;
      return +1;
    }
    if (peek("-")) {
      ++pos_;
      return -1;
    }
    fail("expected sign '+' or '-'");
  }

  CatalogSpec expr() {
    std::vector<CatalogSpec> parts{primary()};
    while (peek("+")) {
      ++pos_;
      parts.push_back(primary());
    }
    if (parts.size() == 1) return std::move(parts.front());
    return CatalogSpec::sum(std::move(parts));
  }

  CatalogSpec primary() {
    if (peek("8")) {
      ++pos_;
      const int s = sign();
      expect("(");
      const double a = number();
      expect(")");
      return CatalogSpec::eight(s, a);
    }
    if (peek("C(")) {
      pos_ += 2;
      std::array<int, 3> signs{};
      signs[0] = sign();
      expect(",");
      signs[1] = sign();
      expect(",");
      signs[2] = sign();
      expect(";");
      const double a1 = number();
      expect(",");
      const double a2 = number();
      expect(",");
      const double a3 = number();
      expect(")");
      return CatalogSpec::cat(signs, a1, a2, a3);
    }
    if (peek("nest(")) {
      pos_ += 5;
      CatalogSpec inner = expr();
      expect(",");
      CatalogSpec outer = expr();
      expect(")");
      return CatalogSpec::nest(std::move(inner), std::move(outer));
    }
    if (peek("merge(")) {
      pos_ += 6;
      const double a1 = number();
      expect(",");
      const double a2 = number();
      expect(",");
      const double a3 = number();
      expect(")");
      return CatalogSpec::merge(a1, a2, a3);
    }
    fail("expected 8+, 8-, C(, nest( or merge(");
  }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

char sign_char(int s) { return s > 0 ? '+' : '-'; }

}  // namespace

void validate_catalog(const CatalogSpec& spec) {
  for (double a : spec.areas)
    if (!(a > 0.0) || !std::isfinite(a))
      throw CatalogConstraintError("areas must be strictly positive, got " + num(a));
  switch (spec.kind) {
    case CatalogKind::Cat:
      if (!(spec.areas[0] - spec.areas[1] + spec.areas[2] > 0.0))
        throw CatalogConstraintError("caterpillar requires A1 - A2 + A3 > 0");
      break;
    case CatalogKind::Merge:
      if (!(spec.areas[1] < spec.areas[0] && spec.areas[1] < spec.areas[2]))
        throw CatalogConstraintError("merge requires A2 < A1 and A2 < A3");
      break;
    case CatalogKind::Nest: {
      const CatalogKind outer = spec.children[1].kind;
      if (outer == CatalogKind::Sum || outer == CatalogKind::Nest || outer == CatalogKind::Merge)
        throw CatalogConstraintError("nest requires an eight or caterpillar as the outer curve");
      break;
    }
    default:
      break;
  }
  for (const auto& c : spec.children) validate_catalog(c);
}

CatalogSpec parse_catalog(std::string_view text) {
  CatalogSpec spec = Parser(text).parse();
  validate_catalog(spec);
  return spec;
}

std::string to_string(const CatalogSpec& spec) {
  switch (spec.kind) {
    case CatalogKind::EightPlus:
      return "8+(" + num(spec.areas[0]) + ")";
    case CatalogKind::EightMinus:
      return "8-(" + num(spec.areas[0]) + ")";
    case CatalogKind::Cat:
      return std::string("C(") + sign_char(spec.signs[0]) + "," + sign_char(spec.signs[1]) + "," +
             sign_char(spec.signs[2]) + ";" + num(spec.areas[0]) + "," + num(spec.areas[1]) + "," +
             num(spec.areas[2]) + ")";
    case CatalogKind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < spec.children.size(); ++i) {
        if (i) out += "+";
        out += to_string(spec.children[i]);
      }
      return out;
    }
    case CatalogKind::Nest:
      return "nest(" + to_string(spec.children[0]) + "," + to_string(spec.children[1]) + ")";
    case CatalogKind::Merge:
      return "merge(" + num(spec.areas[0]) + "," + num(spec.areas[1]) + "," + num(spec.areas[2]) +
             ")";
  }
  return {};
}

std::string shape_string(const CatalogSpec& spec) {
  switch (spec.kind) {
    case CatalogKind::EightPlus:
      return "8+";
    case CatalogKind::EightMinus:
      return "8-";
    case CatalogKind::Cat:
      return std::string("C(") + sign_char(spec.signs[0]) + "," + sign_char(spec.signs[1]) + "," +
             sign_char(spec.signs[2]) + ")";
    case CatalogKind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < spec.children.size(); ++i) {
        if (i) out += " + ";
        out += shape_string(spec.children[i]);
      }
      return out;
    }
    case CatalogKind::Nest:
      return "nest(" + shape_string(spec.children[0]) + "," + shape_string(spec.children[1]) + ")";
    case CatalogKind::Merge:
      return "merge";
  }
  return {};
}

// ------------------------------------------------------------ realization

namespace {

constexpr int kSamplesPerLobe = 48;

// A chain of lobes strung along the x1-axis: lobe i spans [x_i, x_{i+1}],
// lies on side sigma_i = (-1)^i of the axis on the forward (upper) branch,
// and the closing branch is the mirror image. Consecutive lobes meet at
// transverse crossings on the axis.
struct LobeChain {
  PlanarPolyline poly;
  std::vector<double> bounds;   // lobe boundaries x_0 .. x_m
  std::vector<double> heights;  // profile amplitude per lobe
  std::vector<std::vector<Vec2>> lobe_polygons;
};

struct ChainLayout {
  std::vector<double> bounds;
  double d = 0.0;  // half-width of the crossing segment
  double e = 0.0;  // height of the crossing-segment endpoints
};

ChainLayout layout_for(const std::vector<double>& areas) {
  ChainLayout lay;
  lay.bounds.push_back(0.0);
  double min_w = std::numeric_limits<double>::infinity();
  double min_h = std::numeric_limits<double>::infinity();
  for (double a : areas) {
    const double w = 1.5 * std::sqrt(a);
    lay.bounds.push_back(lay.bounds.back() + w);
    min_w = std::min(min_w, w);
    min_h = std::min(min_h, std::numbers::pi * a / (4.0 * w));
  }
  lay.d = 0.25 * min_w / kSamplesPerLobe;
  lay.e = 0.25 * min_h * std::sin(std::numbers::pi / kSamplesPerLobe);
  return lay;
}

// Upper-branch vertices of lobe i (excluding the shared axis endpoints) for
// a given amplitude.
std::vector<Vec2> lobe_upper(const ChainLayout& lay, std::size_t i, std::size_t m, double h) {
  const double x0 = lay.bounds[i], x1 = lay.bounds[i + 1], w = x1 - x0;
  const double side = (i % 2 == 0) ? 1.0 : -1.0;
  std::vector<Vec2> pts;
  if (i > 0) pts.push_back({x0 + lay.d, side * lay.e});
  for (int j = 1; j < kSamplesPerLobe; ++j) {
    const double u = static_cast<double>(j) / kSamplesPerLobe;
    pts.push_back({x0 + u * w, side * h * std::sin(std::numbers::pi * u)});
  }
  if (i + 1 < m) pts.push_back({x1 - lay.d, side * lay.e});
  return pts;
}

std::vector<Vec2> lobe_polygon(const ChainLayout& lay, std::size_t i, std::size_t m, double h) {
  std::vector<Vec2> up = lobe_upper(lay, i, m, h);
  std::vector<Vec2> poly{{lay.bounds[i], 0.0}};
  poly.insert(poly.end(), up.begin(), up.end());
  poly.push_back({lay.bounds[i + 1], 0.0});
  for (auto it = up.rbegin(); it != up.rend(); ++it) poly.push_back({it->x, -it->y});
  return poly;
}

LobeChain make_chain(const std::vector<double>& areas, const std::vector<int>& signs) {
  const std::size_t m = areas.size();
  const ChainLayout lay = layout_for(areas);
  LobeChain chain;
  chain.bounds = lay.bounds;

  // Lobe area is affine in the amplitude; solve it exactly.
  for (std::size_t i = 0; i < m; ++i) {
    const double f0 = std::abs(shoelace(lobe_polygon(lay, i, m, 0.0)));
    const double f1 = std::abs(shoelace(lobe_polygon(lay, i, m, 1.0)));
    const double h = (areas[i] - f0) / (f1 - f0);
    chain.heights.push_back(h);
    chain.lobe_polygons.push_back(lobe_polygon(lay, i, m, h));
  }

  std::vector<Vec2> upper{{lay.bounds[0], 0.0}};
  std::vector<double> upper_lift{0.0};
  std::vector<std::size_t> crossing_vertex;  // index of the vertex left of each crossing
  for (std::size_t i = 0; i < m; ++i) {
    auto pts = lobe_upper(lay, i, m, chain.heights[i]);
    for (const Vec2& p : pts) {
      upper.push_back(p);
      upper_lift.push_back(0.0);
    }
    if (i + 1 < m) crossing_vertex.push_back(upper.size() - 1);
  }
  upper.push_back({lay.bounds[m], 0.0});
  upper_lift.push_back(0.0);

  // Over/under choice per crossing realizing the requested sign.
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const std::size_t v = crossing_vertex[k];
    const Vec2 a = upper[v], b = upper[v + 1];
    const Vec2 t_upper = b - a;
    const Vec2 t_lower = Vec2{a.x, -a.y} - Vec2{b.x, -b.y};
    const int sign_if_upper_over = crossing_sign(t_upper, t_lower);
    const double tau = (sign_if_upper_over == signs[k]) ? 1.0 : -1.0;
    upper_lift[v] = upper_lift[v + 1] = tau;
  }

  PlanarPolyline& poly = chain.poly;
  poly.vertices = upper;
  poly.lift = upper_lift;
  for (std::size_t j = upper.size() - 2; j >= 1; --j) {
    poly.vertices.push_back({upper[j].x, -upper[j].y});
    poly.lift.push_back(-upper_lift[j]);
  }
  return chain;
}

SliceDiagram from_chain(const LobeChain& chain) {
  return SliceDiagram::build({chain.poly}, 1e-9);
}

std::vector<double> chain_areas(const CatalogSpec& spec) {
  if (spec.kind == CatalogKind::Cat)
    return {spec.areas[0], spec.areas[1], spec.areas[2],
            spec.areas[0] - spec.areas[1] + spec.areas[2]};
  return {spec.areas[0], spec.areas[0]};
}

std::vector<int> chain_signs(const CatalogSpec& spec) {
  if (spec.kind == CatalogKind::Cat) return {spec.signs[0], spec.signs[1], spec.signs[2]};
  return {spec.kind == CatalogKind::EightPlus ? 1 : -1};
}

SliceDiagram realize_nest(const CatalogSpec& spec) {
  const SliceDiagram inner = realize_catalog(spec.children[0]);
  const CatalogSpec& outer_spec = spec.children[1];
  const LobeChain outer = make_chain(chain_areas(outer_spec), chain_signs(outer_spec));

  // Axis-aligned box inside the leftmost lobe, where the profile exceeds sin(π/4).
  const double x0 = outer.bounds[0], w = outer.bounds[1] - outer.bounds[0];
  const double rect_w = 0.5 * w * 0.9;
  const double rect_h = 2.0 * outer.heights[0] * std::sin(std::numbers::pi / 4) * 0.9;
  const Vec2 rect_center{x0 + 0.5 * w, 0.0};

  std::vector<Vec2> all;
  for (const auto& c : inner.components()) all.insert(all.end(), c.vertices.begin(), c.vertices.end());
  const Box b = bounding_box(all);
  if (b.width() * b.height() >= rect_w * rect_h)
    throw CatalogConstraintError("nest: inner diagram does not fit inside a lobe of the outer curve");
  // Area-preserving stretch (k x, y / k) fitting the inner bounding box.
  const double k = std::sqrt((rect_w / b.width()) * (b.height() / rect_h));
  Affine2 map;
  map.a = k;
  map.d = 1.0 / k;
  const Vec2 c{(b.xmin + b.xmax) / 2, (b.ymin + b.ymax) / 2};
  map.tx = rect_center.x - k * c.x;
  map.ty = rect_center.y - c.y / k;

  std::vector<PlanarPolyline> comps{outer.poly};
  for (PlanarPolyline p : inner.components()) {
    for (auto& v : p.vertices) v = map.apply(v);
    comps.push_back(std::move(p));
  }
  return SliceDiagram::build(std::move(comps), 1e-9);
}

// Two figure-eights whose tips overlap in a lens: the left one is 8-(A1),
// the right one 8+(A3), and the lens between the right lobe of the former
// and the left lobe of the latter has area A2.
SliceDiagram realize_merge(const CatalogSpec& spec) {
  const double a1 = spec.areas[0], a2 = spec.areas[1], a3 = spec.areas[2];
  const LobeChain minus = make_chain({a1, a1}, {-1});
  const LobeChain plus = make_chain({a3, a3}, {+1});

  auto place = [&](double overlap) {
    PlanarPolyline left = minus.poly;
    const double shift = plus.bounds.front() - minus.bounds.back() + overlap;
    for (auto& v : left.vertices) v.x += shift;
    for (auto& l : left.lift) l += 3.0;
    return std::pair{SliceDiagram::build({left, plus.poly}, 1e-9), shift};
  };
  auto lens_area = [&](double overlap, bool* ok) {
    auto [d, shift] = place(overlap);
    *ok = d.crossings().size() == 4;
    if (!*ok) return 0.0;
    std::vector<Vec2> lobe = minus.lobe_polygons.back();
    for (auto& v : lobe) v.x += shift;
    for (const Region& r : regions(d))
      if (point_in_polygon(r.label, lobe) && point_in_polygon(r.label, plus.lobe_polygons.front()))
        return r.area;
    *ok = false;
    return 0.0;
  };

  const double span = std::min(minus.bounds.back() - minus.bounds[1], plus.bounds[1]);
  double lo = 0.0, hi = -1.0;
  for (int i = 1; i <= 400; ++i) {
    const double overlap = span * i / 400.0;
    bool ok = false;
    const double area = lens_area(overlap, &ok);
    if (!ok) break;
    if (area >= a2) {
      hi = overlap;
      break;
    }
    lo = overlap;
  }
  if (hi < 0.0) throw CatalogConstraintError("merge: lens area A2 is not attainable for these lobes");
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    bool ok = false;
    (lens_area(mid, &ok) < a2 ? lo : hi) = mid;
  }
  return place(hi).first;
}

}  // namespace

SliceDiagram realize_catalog(const CatalogSpec& spec) {
  validate_catalog(spec);
  switch (spec.kind) {
    case CatalogKind::EightPlus:
    case CatalogKind::EightMinus:
    case CatalogKind::Cat:
      return from_chain(make_chain(chain_areas(spec), chain_signs(spec)));
    case CatalogKind::Sum: {
      SliceDiagram acc;
      for (const auto& c : spec.children) acc = sum(acc, realize_catalog(c));
      return acc;
    }
    case CatalogKind::Nest:
      return realize_nest(spec);
    case CatalogKind::Merge:
      return realize_merge(spec);
  }
  return {};
}

}  // namespace slicelab
