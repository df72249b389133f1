#include <doctest.h>

#include "slicelab/capacity.hpp"
#include "slicelab/catalog.hpp"

using namespace slicelab;

namespace {

Analysis run(const char* text, bool assume = true) {
  AnalysisOptions opt;
  opt.assume_negative_slice = assume;
  return analyze(realize_catalog(parse_catalog(text)), opt);
}

std::optional<double> forced(const Analysis& a, int degree, Capacity cap) {
  const ClassReport* cr = degree == 0 ? a.report.diagonal() : a.report.find(1, 0);
  REQUIRE(cr != nullptr);
  return (*cr)[cap].forced_value();
}

}  // namespace

TEST_CASE("positive eight forces all four capacities") {
  const Analysis a = run("8+(1)");
  CHECK(a.verdict.kind == SliceVerdict::Kind::NoObstruction);
  CHECK(forced(a, 0, Capacity::LowerPlus) == 0.0);
  CHECK(forced(a, 0, Capacity::LowerMinus) == doctest::Approx(-1.0));
  CHECK(forced(a, 1, Capacity::UpperPlus) == doctest::Approx(1.0));
  CHECK(forced(a, 1, Capacity::UpperMinus) == 0.0);
}

TEST_CASE("negative eight") {
  const Analysis a = run("8-(1)");
  CHECK(a.verdict.kind == SliceVerdict::Kind::Impossible);
  REQUIRE(a.verdict.witness);
  CHECK_FALSE(a.verdict.chain.empty());

  const Analysis b = run("8-(1)", false);
  CHECK(b.verdict.kind == SliceVerdict::Kind::NoObstruction);
  const auto& c_plus = (*b.report.diagonal())[Capacity::LowerPlus];
  REQUIRE(c_plus.kind == CapacityStatus::Kind::CandidateSet);
  REQUIRE(c_plus.candidates.values.size() == 1);
  CHECK(c_plus.candidates.values[0] == doctest::Approx(-1.0));
  const auto& big_minus = (*b.report.find(1, 0))[Capacity::UpperMinus];
  REQUIRE(big_minus.kind == CapacityStatus::Kind::CandidateSet);
  REQUIRE(big_minus.candidates.values.size() == 1);
  CHECK(big_minus.candidates.values[0] == doctest::Approx(1.0));
}

TEST_CASE("impossible caterpillars") {
  for (const char* text : {"C(-,+,-;3,1,2)", "C(-,-,-;3,1,2)", "C(-,-,-;1,3,3)"}) {
    CAPTURE(text);
    CHECK(run(text).verdict.kind == SliceVerdict::Kind::Impossible);
  }
  const Analysis rank = run("C(-,-,-;3,1,2)");
  bool rank_step = false;
  for (const auto& step : rank.verdict.chain) rank_step |= step.find("rank-surjection") != std::string::npos;
  CHECK(rank_step);
}

TEST_CASE("realizable caterpillars and sums") {
  const Analysis cat = run("C(+,-,+;1,2,2)");
  CHECK(cat.verdict.kind == SliceVerdict::Kind::NoObstruction);
  CHECK(forced(cat, 0, Capacity::LowerMinus) == doctest::Approx(-1.0));
  CHECK(run("C(+,+,+;1,2,2)").verdict.kind == SliceVerdict::Kind::NoObstruction);

  const Analysis two = run("8+(1) + 8+(1)");
  CHECK(two.verdict.kind == SliceVerdict::Kind::NoObstruction);
  CHECK(forced(two, 0, Capacity::LowerMinus) == doctest::Approx(-1.0));
}

TEST_CASE("connect sums") {
  const auto bad = connect_sum_analysis(realize_catalog(parse_catalog("8-(1)")),
                                        realize_catalog(parse_catalog("8+(2)")));
  CHECK(bad.verdict.kind == SliceVerdict::Kind::ImpossibleAsConnectSum);
  const auto good = connect_sum_analysis(realize_catalog(parse_catalog("8+(1)")),
                                         realize_catalog(parse_catalog("8+(1)")));
  CHECK(good.verdict.kind == SliceVerdict::Kind::NoObstruction);
  CHECK((*good.report.diagonal())[Capacity::LowerMinus].forced_value() == doctest::Approx(-1.0));
}

TEST_CASE("empty slice has only vanishing capacities") {
  const Analysis a = analyze(SliceDiagram{});
  CHECK(a.verdict.kind == SliceVerdict::Kind::NoObstruction);
  for (const auto& cr : a.report.classes) CHECK(cr.all_forced_zero());
}

TEST_CASE("pipeline is idempotent and rules never widen sets") {
  for (const char* text : {"8+(1)", "C(+,-,+;1,2,2)", "8-(1)", "8+(1) + 8-(2)"}) {
    CAPTURE(text);
    const SliceDiagram d = realize_catalog(parse_catalog(text));
    const MorseTable table = morse_table(d);
    CapacityReport report = initial_report(table, false);
    const CapacityReport before = report;
    run_pipeline(report, table, AnalysisOptions{false});
    for (std::size_t i = 0; i < report.classes.size(); ++i)
      for (Capacity cap : kAllCapacities) {
        const auto& after = report.classes[i][cap];
        const auto& start = before.classes[i][cap];
        if (after.kind == CapacityStatus::Kind::ForcedValue) {
          const auto& vals = start.candidates.values;
          const bool listed = std::any_of(vals.begin(), vals.end(),
                                          [&](double v) { return std::abs(v - after.value) < 1e-12; });
          CHECK((listed || start.candidates.wildcard));
        }
      }
    CapacityReport again = report;
    CHECK_FALSE(apply_index_vanishing(again, table));
    CHECK_FALSE(apply_rank_surjection(again, table));
  }
}

TEST_CASE("candidate sets before any rule") {
  const MorseTable eight = morse_table(realize_catalog(parse_catalog("8+(1)")));
  const auto diag = analyzed_classes(1);
  const auto it = std::find_if(diag.begin(), diag.end(), [](const CohomologyClass& c) { return c.diagonal; });
  REQUIRE(it != diag.end());
  const CandidateValues cm = candidate_values(eight, *it, Capacity::LowerMinus);
  REQUIRE(cm.values.size() == 1);
  CHECK(cm.values[0] == doctest::Approx(-1.0));
  CHECK(candidate_values(eight, *it, Capacity::UpperPlus).values.empty());

  const MorseTable cat = morse_table(realize_catalog(parse_catalog("C(+,-,+;1,2,2)")));
  const CandidateValues cc = candidate_values(cat, *it, Capacity::LowerMinus);
  REQUIRE(cc.values.size() == 1);
  CHECK(cc.values[0] == doctest::Approx(-1.0));
}
