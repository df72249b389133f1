#include <doctest.h>

#include <random>

#include "slicelab/catalog.hpp"
#include "slicelab/morse.hpp"
#include "support.hpp"

using namespace slicelab;

namespace {

struct Row {
  Location loc;
  int offset;
  double value;
};

std::vector<Row> crossing_rows(const MorseTable& t) {
  std::vector<Row> out;
  for (const auto& r : t.rows)
    if (r.crossing) out.push_back({r.location, *r.offset, *r.value});
  return out;
}

}  // namespace

TEST_CASE("eight plus table") {
  const MorseTable t = morse_table(realize_catalog(parse_catalog("8+(1)")));
  const auto rows = crossing_rows(t);
  REQUIRE(rows.size() == 2);
  int seen = 0;
  for (const Row& r : rows) {
    if (r.loc == Location::PMinus) {
      CHECK(r.offset == 0);
      CHECK(r.value == doctest::Approx(-1.0));
      seen |= 1;
    } else {
      CHECK(r.loc == Location::PPlus);
      CHECK(r.offset == 3);
      CHECK(r.value == doctest::Approx(1.0));
      seen |= 2;
    }
  }
  CHECK(seen == 3);
  CHECK(t.topology.components == 1);
  CHECK(t.rows.back().location == Location::None);
  CHECK(t.rows.back().offset == 1);
  CHECK(t.rows.back().value == 0.0);
}

TEST_CASE("all-negative caterpillar has the expected center pair") {
  const MorseTable t = morse_table(realize_catalog(parse_catalog("C(-,-,-;3,1,2)")));
  bool found_plus = false, found_minus = false;
  for (const Row& r : crossing_rows(t)) {
    if (r.loc == Location::PPlus && r.offset == 2 && std::abs(r.value - 2.0) < 1e-9) found_plus = true;
    if (r.loc == Location::PMinus && r.offset == 1 && std::abs(r.value + 2.0) < 1e-9) found_minus = true;
  }
  CHECK(found_plus);
  CHECK(found_minus);
}

TEST_CASE("pair symmetry and arc independence on random catalog diagrams") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 60; ++k) {
    const CatalogSpec spec = testing::random_catalog(rng);
    CAPTURE(to_string(spec));
    const SliceDiagram d = realize_catalog(spec);
    for (std::size_t x = 0; x < d.crossings().size(); ++x) {
      const auto v0 = capping_value(d, x, 0), v1 = capping_value(d, x, 1);
      if (!v0) {
        CHECK_FALSE(d.crossings()[x].self_crossing());
        continue;
      }
      CHECK(std::abs(*v0 + *v1) < 1e-9);
      CHECK(*capping_index_offset(d, x, 0) + *capping_index_offset(d, x, 1) == 3);
      for (int b = 0; b < 2; ++b) {
        CHECK(std::abs(*capping_value(d, x, b, CappingArc::Backward) - *capping_value(d, x, b)) < 1e-9);
        CHECK(*capping_index_offset(d, x, b, CappingArc::Backward) == *capping_index_offset(d, x, b));
      }
      CHECK(location(d, x, 0) != location(d, x, 1));
    }
  }
}

TEST_CASE("inter-component crossings are symbolic") {
  const MorseTable t = morse_table(realize_catalog(parse_catalog("merge(2,0.5,3)")));
  CHECK(t.has_symbolic());
  const MorseTable u = morse_table(realize_catalog(parse_catalog("8+(1) + 8-(2)")));
  CHECK_FALSE(u.has_symbolic());
  CHECK(u.topology.components == 2);
}

TEST_CASE("empty diagram has no rows") {
  const MorseTable t = morse_table(SliceDiagram{});
  CHECK(t.rows.empty());
}

TEST_CASE("unlifted diagrams are rejected") {
  PlanarPolyline p{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}};
  const SliceDiagram d = SliceDiagram::build({p});
  REQUIRE(d.crossings().size() == 1);
  CHECK_THROWS_AS(location(d, 0, 0), InvalidInput);
}

TEST_CASE("two rows per crossing and one submanifold row") {
  for (const char* text : {"C(+,-,+;1,2,2)", "merge(2,0.5,3)", "nest(8+(0.1), 8-(3))"}) {
    CAPTURE(text);
    const SliceDiagram d = realize_catalog(parse_catalog(text));
    const MorseTable t = morse_table(d);
    std::size_t submanifold = 0;
    std::vector<int> per_crossing(d.crossings().size(), 0);
    for (const auto& r : t.rows) {
      if (!r.crossing) {
        ++submanifold;
        CHECK(r.value == 0.0);
        CHECK(r.offset == 1);
        continue;
      }
      ++per_crossing[*r.crossing];
      CHECK(r.symbolic() == !d.crossings()[*r.crossing].self_crossing());
    }
    CHECK(submanifold == 1);
    for (int n : per_crossing) CHECK(n == 2);
  }
}
