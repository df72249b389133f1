#include <doctest.h>

#include <random>

#include "slicelab/catalog.hpp"
#include "slicelab/equivalence.hpp"
#include "slicelab/regions.hpp"
#include "support.hpp"

using namespace slicelab;

TEST_CASE("parser builds the expected trees") {
  CHECK(parse_catalog("8+(1)") == CatalogSpec::eight(+1, 1.0));
  CHECK(parse_catalog(" 8-( 2.5 ) ") == CatalogSpec::eight(-1, 2.5));
  CHECK(parse_catalog("C(-,+,-;3,1,2)") == CatalogSpec::cat({-1, +1, -1}, 3, 1, 2));
  CHECK(parse_catalog("8+(1)+8+(2)") ==
        CatalogSpec::sum({CatalogSpec::eight(1, 1), CatalogSpec::eight(1, 2)}));
}

TEST_CASE("canonical text round-trips") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    const CatalogSpec spec = testing::random_catalog(rng);
    const std::string text = to_string(spec);
    CAPTURE(text);
    const CatalogSpec again = parse_catalog(text);
    CHECK(to_string(again) == text);
  }
}

TEST_CASE("shape strings drop areas") {
  CHECK(shape_string(parse_catalog("C(+,-,+;1,2,2)")) == "C(+,-,+)");
  CHECK(shape_string(parse_catalog("8+(1) + 8-(2)")) == "8+ + 8-");
}

TEST_CASE("syntax errors carry a position") {
  auto position = [](const char* text) -> long {
    try {
      parse_catalog(text);
    } catch (const CatalogSyntaxError& e) {
      return static_cast<long>(e.position);
    }
    return -1;
  };
  CHECK(position("8+(1") == 4);
  CHECK(position("8*(1)") == 1);
  CHECK(position("C(+,-;1,2,2)") >= 0);
  CHECK(position("") == 0);
  CHECK(position("8+(1) +") >= 0);
}

TEST_CASE("area constraints are enforced") {
  CHECK_THROWS_AS(parse_catalog("C(+,-,+;1,3,1)"), CatalogConstraintError);
  CHECK_THROWS_AS(parse_catalog("8+(0)"), CatalogConstraintError);
  CHECK_THROWS_AS(parse_catalog("8+(-1)"), CatalogConstraintError);
  CHECK_THROWS_AS(parse_catalog("merge(1,2,3)"), CatalogConstraintError);
  CHECK_NOTHROW(parse_catalog("C(+,-,+;1,1.9,1)"));
}

TEST_CASE("realized lobes have the requested areas") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 30; ++k) {
    const double a = testing::draw_area(rng);
    const SliceDiagram d = realize_catalog(CatalogSpec::eight(testing::draw_sign(rng), a));
    for (const Region& r : regions(d)) CHECK(r.area == doctest::Approx(a).epsilon(1e-9));
  }
}

TEST_CASE("merge realizes the lens area") {
  const SliceDiagram d = realize_catalog(parse_catalog("merge(2,0.5,3)"));
  std::vector<double> areas;
  for (const Region& r : regions(d)) areas.push_back(r.area);
  std::sort(areas.begin(), areas.end());
  REQUIRE(areas.size() == 5);
  CHECK(areas[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(areas[1] == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(areas[2] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(areas[3] == doctest::Approx(2.5).epsilon(1e-6));
  CHECK(areas[4] == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("nest places the inner diagram in a lobe") {
  const SliceDiagram d = realize_catalog(parse_catalog("nest(8+(0.1), 8-(3))"));
  CHECK(d.components().size() == 2);
  CHECK(d.crossings().size() == 2);
  std::vector<double> areas;
  for (const Region& r : regions(d)) areas.push_back(r.area);
  std::sort(areas.begin(), areas.end());
  REQUIRE(areas.size() == 4);
  CHECK(areas[2] == doctest::Approx(2.8).epsilon(1e-6));
  CHECK_THROWS_AS(realize_catalog(parse_catalog("nest(8+(5), 8-(0.1))")), CatalogConstraintError);
}
