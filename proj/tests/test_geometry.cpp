#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "slicelab/catalog.hpp"
#include "slicelab/equivalence.hpp"
#include "slicelab/regions.hpp"
#include "support.hpp"

using namespace slicelab;

namespace {

PlanarPolyline circle(double r, int n = 64) {
  PlanarPolyline p;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * std::numbers::pi * i / n;
    p.vertices.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return p;
}

}  // namespace

TEST_CASE("shoelace of unit square and its reverse") {
  std::vector<Vec2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(shoelace(sq) == doctest::Approx(1.0));
  std::vector<Vec2> rev(sq.rbegin(), sq.rend());
  CHECK(shoelace(rev) == doctest::Approx(-1.0));
  CHECK(turning_number(sq) == doctest::Approx(1.0));
}

TEST_CASE("segment intersection uses half-open parameters") {
  auto hit = intersect_segments({0, 0}, {2, 2}, {0, 2}, {2, 0});
  REQUIRE(hit);
  CHECK(hit->t == doctest::Approx(0.5));
  CHECK(hit->point.x == doctest::Approx(1.0));
  CHECK_FALSE(intersect_segments({0, 0}, {1, 0}, {0, 1}, {1, 1}));
}

TEST_CASE("a circle fails both validity checks") {
  const SliceDiagram d = SliceDiagram::build({circle(1.0)});
  const auto report = validity_report(d);
  REQUIRE(report.size() == 1);
  CHECK_FALSE(report[0].area_ok);
  CHECK_FALSE(report[0].winding_ok);
  CHECK_FALSE(all_valid(report));
}

TEST_CASE("catalog eights pass both validity checks") {
  for (const char* text : {"8+(1)", "8-(2.5)", "C(+,-,+;1,2,2)", "8+(1) + 8-(3)"}) {
    CAPTURE(text);
    CHECK(all_valid(validity_report(realize_catalog(parse_catalog(text)))));
  }
}

TEST_CASE("polyline validation rejects degenerate input") {
  PlanarPolyline p{{{0, 0}, {1, 0}}};
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  PlanarPolyline q{{{0, 0}, {1, 0}, {1, 0}, {0, 1}}};
  CHECK_THROWS_AS(q.validate(), InvalidInput);
  PlanarPolyline open{{{0, 0}, {1, 0}, {1, 1}}, false};
  CHECK_THROWS_AS(signed_area(open), InvalidInput);
}

TEST_CASE("tangent strands are non-generic") {
  PlanarPolyline a{{{0, -1e-13}, {2, 1e-13}, {1, 1}}};
  PlanarPolyline b{{{0, 1e-13}, {2, -1e-13}, {1, -1}}};
  CHECK_THROWS_AS(SliceDiagram::build({a, b}), NonGenericError);
}

TEST_CASE("crossing detection matches a brute-force count") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 60; ++k) {
    const SliceDiagram d = realize_catalog(testing::random_catalog(rng));
    CHECK(d.crossings().size() == testing::brute_force_crossings(d.components()));
  }
  // Random polygons without lifts.
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 40; ++k) {
    PlanarPolyline p;
    for (int i = 0; i < 12; ++i) p.vertices.push_back({u(rng), u(rng)});
    const auto xs = detect_crossings(std::vector<PlanarPolyline>{p});
    CHECK(xs.size() == testing::brute_force_crossings({p}));
  }
}

TEST_CASE("crossing sign follows over and under tangents") {
  CHECK(crossing_sign({1, 0}, {0, 1}) == 1);
  CHECK(crossing_sign({0, 1}, {1, 0}) == -1);
  const SliceDiagram plus = realize_catalog(parse_catalog("8+(1)"));
  const SliceDiagram minus = realize_catalog(parse_catalog("8-(1)"));
  REQUIRE(plus.crossings().size() == 1);
  CHECK(plus.crossings()[0].sign == 1);
  CHECK(minus.crossings()[0].sign == -1);
}

TEST_CASE("region areas of catalog shapes") {
  auto areas = [](const char* text) {
    std::vector<double> out;
    for (const Region& r : regions(realize_catalog(parse_catalog(text)))) out.push_back(r.area);
    std::sort(out.begin(), out.end());
    return out;
  };
  const auto eight = areas("8+(1.5)");
  REQUIRE(eight.size() == 2);
  CHECK(eight[0] == doctest::Approx(1.5));
  CHECK(eight[1] == doctest::Approx(1.5));
  const auto cat = areas("C(-,+,-;3,1,2)");
  REQUIRE(cat.size() == 4);
  CHECK(cat[0] == doctest::Approx(1.0));
  CHECK(cat[1] == doctest::Approx(2.0));
  CHECK(cat[2] == doctest::Approx(3.0));
  CHECK(cat[3] == doctest::Approx(4.0));  // A1 - A2 + A3
}

TEST_CASE("equivalence key is invariant under area-preserving motions") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  const std::vector<std::string> inputs{"8+(1)", "C(+,-,+;1,2,2)", "8+(1) + 8-(2)",
                                        "C(-,-,-;1,3,3)"};
  for (int k = 0; k < 100; ++k) {
    const SliceDiagram d = realize_catalog(parse_catalog(inputs[k % inputs.size()]));
    Affine2 m;
    switch (k % 3) {
      case 0: {  // rotation
        const double t = angle(rng);
        m = {std::cos(t), -std::sin(t), std::sin(t), std::cos(t), u(rng), u(rng)};
        break;
      }
      case 1:  // horizontal shear
        m = {1, u(rng), 0, 1, u(rng), u(rng)};
        break;
      default: {  // vertical shear composed with a squeeze
        const double s = std::exp(u(rng) / 4);
        const double h = u(rng);
        m = {s, 0, h / s, 1 / s, u(rng), u(rng)};
      }
    }
    REQUIRE(m.det() == doctest::Approx(1.0));
    const SliceDiagram moved = transformed(d, m);
    const EquivalenceKey a = equivalence_key(d), b = equivalence_key(moved);
    CHECK(a.code == b.code);
    REQUIRE(a.areas.size() == b.areas.size());
    for (std::size_t i = 0; i < a.areas.size(); ++i) CHECK(std::abs(a.areas[i] - b.areas[i]) < 1e-7);
  }
}

TEST_CASE("sum is associative and commutative up to equivalence, with empty identity") {
  const SliceDiagram a = realize_catalog(parse_catalog("8+(1)"));
  const SliceDiagram b = realize_catalog(parse_catalog("8-(2)"));
  const SliceDiagram c = realize_catalog(parse_catalog("C(+,-,+;1,2,2)"));
  CHECK(equivalent(sum(sum(a, b), c), sum(a, sum(b, c))));
  CHECK(equivalent(sum(a, b), sum(b, a)));
  CHECK(equivalent(sum(a, SliceDiagram{}), a));
  CHECK(equivalent(sum(SliceDiagram{}, a), a));
  CHECK_FALSE(equivalent(a, b));
  CHECK_FALSE(equivalent(a, realize_catalog(parse_catalog("8+(1.1)"))));
}

TEST_CASE("reversing a component or rotating its start keeps the key") {
  const SliceDiagram d = realize_catalog(parse_catalog("C(+,-,-;2,1,3)"));
  auto comps = d.components();
  std::rotate(comps[0].vertices.begin(), comps[0].vertices.begin() + 17, comps[0].vertices.end());
  std::rotate(comps[0].lift.begin(), comps[0].lift.begin() + 17, comps[0].lift.end());
  CHECK(equivalence_key(SliceDiagram::build(comps)) == equivalence_key(d));
}
