// One line per acceptance criterion; exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "slicelab/app.hpp"
#include "slicelab/capacity.hpp"
#include "slicelab/catalog.hpp"
#include "slicelab/morse.hpp"
#include "slicelab/oracle.hpp"
#include "slicelab/order.hpp"
#include "slicelab/slicer.hpp"
#include "support.hpp"

using namespace slicelab;

namespace {

// Pinned tolerances.
constexpr double kExactTol = 1e-9;        // polyline round-off on exact fixtures
constexpr double kArcTol = 1e-9;          // arc-choice independence
constexpr double kOracleRelTol = 0.02;    // oracle vs analyzer critical values
constexpr int kRandomDiagrams = 200;
constexpr int kOracleGrid = 512;
constexpr int kSweepGrid = 256;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void criterion(int n, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    std::ostringstream why;
    why << "took " << secs << " s, budget " << budget_s << " s";
    o.fail(why.str());
  }
  failures += !o.pass;
  std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", n, title, secs,
              o.detail.empty() ? "" : " - ", o.detail.c_str());
  std::fflush(stdout);
}

SliceDiagram dia(const std::string& text) {
  return text == "empty" ? SliceDiagram{} : realize_catalog(parse_catalog(text));
}

Analysis run(const std::string& text, bool assume = true) {
  AnalysisOptions opt;
  opt.assume_negative_slice = assume;
  return analyze(dia(text), opt);
}

bool near(std::optional<double> v, double want) { return v && std::abs(*v - want) <= kExactTol; }

bool single_candidate(const CapacityStatus& s, double want) {
  return s.kind == CapacityStatus::Kind::CandidateSet && !s.candidates.wildcard &&
         s.candidates.values.size() == 1 && std::abs(s.candidates.values[0] - want) <= kExactTol;
}

std::vector<Json> presets() { return load_presets(AppConfig::from_env()); }

}  // namespace

int main() {
  criterion(1, "Morse table of C(-,+,-;3,1,2)", 1.0, [](Outcome& o) {
    const MorseTable t = morse_table(dia("C(-,+,-;3,1,2)"));
    struct Want {
      Location loc;
      int offset;
      double value;
    };
    std::vector<Want> want{{Location::PMinus, 3, 3}, {Location::PPlus, 0, -3},
                           {Location::PMinus, 2, 2}, {Location::PPlus, 1, -2},
                           {Location::PMinus, 3, 4}, {Location::PPlus, 0, -4}};
    std::size_t rows = 0;
    for (const auto& r : t.rows) {
      if (!r.crossing) continue;
      ++rows;
      auto it = std::find_if(want.begin(), want.end(), [&](const Want& w) {
        return w.loc == r.location && r.offset == w.offset && near(r.value, w.value);
      });
      if (it == want.end()) {
        o.fail("unexpected row");
        return;
      }
      want.erase(it);
    }
    if (rows != 6 || !want.empty()) o.fail("row count mismatch");
  });

  criterion(2, "capacities of 8+(1) and 8-(1)", 1.0, [](Outcome& o) {
    const Analysis a = run("8+(1)");
    const ClassReport* d = a.report.diagonal();
    const ClassReport* h1 = a.report.find(1, 0);
    if (!d || !h1) return o.fail("missing classes");
    if (!near((*d)[Capacity::LowerPlus].forced_value(), 0)) o.fail("c+ not forced 0");
    if (!near((*d)[Capacity::LowerMinus].forced_value(), -1)) o.fail("c- not forced -1");
    if (!near((*h1)[Capacity::UpperPlus].forced_value(), 1)) o.fail("C+ not forced +1");
    if (!near((*h1)[Capacity::UpperMinus].forced_value(), 0)) o.fail("C- not forced 0");
    if (run("8-(1)").verdict.kind != SliceVerdict::Kind::Impossible) o.fail("8-(1) not impossible");
    const Analysis b = run("8-(1)", false);
    if (!single_candidate((*b.report.diagonal())[Capacity::LowerPlus], -1)) o.fail("c+ candidates");
    if (!single_candidate((*b.report.find(1, 0))[Capacity::UpperMinus], 1)) o.fail("C- candidates");
  });

  criterion(3, "impossible caterpillars", 3.0, [](Outcome& o) {
    for (const char* text : {"C(-,+,-;3,1,2)", "C(-,-,-;3,1,2)", "C(-,-,-;1,3,3)"})
      if (run(text).verdict.kind != SliceVerdict::Kind::Impossible) o.fail(std::string(text) + " not impossible");
  });

  criterion(4, "forced c- on C(+,-,+;1,2,2) and 8+(1) + 8+(1)", 1.0, [](Outcome& o) {
    for (const char* text : {"C(+,-,+;1,2,2)", "8+(1) + 8+(1)"})
      if (!near((*run(text).report.diagonal())[Capacity::LowerMinus].forced_value(), -1))
        o.fail(std::string(text) + ": c- not forced -1");
  });

  criterion(5, "connect sum of 8-(1) and 8+(2)", 1.0, [](Outcome& o) {
    const Analysis a = connect_sum_analysis(dia("8-(1)"), dia("8+(2)"));
    if (a.verdict.kind != SliceVerdict::Kind::ImpossibleAsConnectSum) o.fail(to_string(a.verdict.kind));
  });

  criterion(6, "relation fixtures", 5.0, [](Outcome& o) {
    auto kind = [](const char* b, const char* t) { return check_relation({dia(b), dia(t), true}).kind; };
    using K = RelationVerdict::Kind;
    if (kind("8+(1)", "8+(2)") == K::Obstructed) o.fail("smaller eight below larger obstructed");
    if (kind("8+(2)", "8+(1)") != K::Obstructed) o.fail("larger eight below smaller not obstructed");
    if (kind("8+(1)", "C(+,-,+;1,2,2)") != K::Obstructed) o.fail("eight below caterpillar");
    if (kind("C(+,-,+;1,2,2)", "8+(1)") != K::Obstructed) o.fail("caterpillar below eight");
    if (kind("8+(1)", "8+(1) + 8+(1)") != K::Obstructed) o.fail("eight below two eights");
    for (const char* top : {"8+(1)", "C(+,-,+;1,2,2)", "8+(1) + 8+(1)", "8+(3)", "empty"})
      if (kind("empty", top) == K::Obstructed) o.fail(std::string("empty below ") + top);
  });

  criterion(7, "pair symmetry on random catalog diagrams", 30.0, [](Outcome& o) {
    std::mt19937_64 rng(20240607);
    std::size_t pairs = 0;
    for (int k = 0; k < kRandomDiagrams; ++k) {
      const SliceDiagram d = realize_catalog(testing::random_catalog(rng));
      for (std::size_t x = 0; x < d.crossings().size(); ++x) {
        if (!d.crossings()[x].self_crossing()) continue;
        ++pairs;
        const double v0 = *capping_value(d, x, 0), v1 = *capping_value(d, x, 1);
        if (std::abs(v0 + v1) > kExactTol * std::max(1.0, std::abs(v0))) o.fail("value sum != 0");
        if (*capping_index_offset(d, x, 0) + *capping_index_offset(d, x, 1) != 3) o.fail("offset sum != 3");
        for (int b = 0; b < 2; ++b) {
          const double fwd = *capping_value(d, x, b);
          const double bwd = *capping_value(d, x, b, CappingArc::Backward);
          if (std::abs(fwd - bwd) > kArcTol * std::max(1.0, std::abs(fwd))) o.fail("arc value mismatch");
          if (*capping_index_offset(d, x, b) != *capping_index_offset(d, x, b, CappingArc::Backward))
            o.fail("arc offset mismatch");
        }
      }
    }
    if (pairs < static_cast<std::size_t>(kRandomDiagrams)) o.fail("too few crossing pairs sampled");
  });

  criterion(8, "Hessian oracle on every preset crossing at 512x512", 60.0, [](Outcome& o) {
    std::size_t checked = 0;
    for (const Json& p : presets()) {
      const GeneratingFamily f = family_from_json(p);
      for (double level : p["levels"].get<std::vector<double>>()) {
        const SliceResult s = extract_slice(f, level, Grid::around(f, kOracleGrid));
        const MorseTable t = morse_table(s.diagram);
        for (const auto& row : t.rows) {
          if (!row.crossing || row.symbolic()) continue;
          const OracleResult r = hessian_oracle(f, s, *row.crossing);
          const OraclePoint& pt = r.branches[row.branch];
          ++checked;
          if (pt.index != *row.offset) o.fail("offset mismatch in " + p["name"].get<std::string>());
          if (std::abs(pt.value - *row.value) > kOracleRelTol * std::abs(pt.value))
            o.fail("value mismatch in " + p["name"].get<std::string>());
        }
      }
    }
    if (checked == 0) o.fail("no crossings checked");
  });

  criterion(9, "numeric realization of P-eight", 120.0, [](Outcome& o) {
    const auto all = presets();
    const auto it = std::find_if(all.begin(), all.end(), [](const Json& p) { return p["name"] == "P-eight"; });
    if (it == all.end()) return o.fail("preset missing");
    const GeneratingFamily f = family_from_json(*it);
    const std::vector<double> levels = (*it)["levels"];
    for (double level : levels) {
      const SliceResult s = extract_slice(f, level, Grid::around(f, kSweepGrid));
      const auto& spec = s.classification.spec;
      if (!spec || spec->kind != CatalogKind::EightPlus || !(spec->areas[0] > 0)) o.fail("not 8+(A) with A > 0");
    }
    const Json& sw = (*it)["sweep"];
    const SweepResult r = sweep(f, sw["from"], sw["to"], sw["steps"], Grid::around(f, kSweepGrid));
    const bool birth = std::any_of(r.events.begin(), r.events.end(), [](const TransitionEvent& e) {
      return e.from.rfind("empty", 0) == 0 && e.to.rfind("8+ [", 0) == 0;
    });
    if (!birth) o.fail("no birth event");
    double last = 0.0;
    for (const LevelSummary& l : r.levels) {
      if (l.shape != "8+") continue;
      const double area = l.areas.back();
      if (area < last) o.fail("classified area decreased");
      last = area;
    }
    // Residuals at the middle documented level on successively doubled grids.
    const double level = levels[levels.size() / 2];
    double prev = -1.0;
    for (int n : {64, 128, 256, 512}) {
      const SliceResult s = extract_slice(f, level, Grid::around(f, n));
      double res = 0.0;
      for (const auto& v : s.validity) res = std::max(res, v.area_residual);
      if (prev >= 0.0 && res > prev / 2) o.fail("residual not halved at grid " + std::to_string(n));
      prev = res;
    }
  });

  criterion(10, "no negative eights and no obstructed family witnesses", 120.0, [](Outcome& o) {
    for (const Json& p : presets()) {
      const std::string name = p["name"];
      const GeneratingFamily f = family_from_json(p);
      const Grid grid = Grid::around(f, kSweepGrid);
      const Json& sw = p["sweep"];
      const int steps = sw["steps"];
      const double lo = sw["from"], hi = sw["to"];
      std::vector<SliceResult> slices;
      for (int i = 0; i <= steps; ++i) {
        const double level = lo + (hi - lo) * i / steps;
        try {
          slices.push_back(extract_slice(f, level, grid));
        } catch (const NonGenericError&) {
          continue;
        }
        const SliceResult& s = slices.back();
        if (s.diagram.components().size() == 1 && s.classification.spec &&
            s.classification.spec->kind == CatalogKind::EightMinus)
          o.fail(name + ": connected slice classified as 8-");
      }
      for (std::size_t i = 0; i < slices.size(); ++i)
        for (std::size_t j = i + 1; j < slices.size(); ++j) {
          const RelationVerdict v = check_relation({slices[i].diagram, slices[j].diagram, true});
          if (v.kind == RelationVerdict::Kind::Obstructed) {
            std::ostringstream why;
            why << name << ": witness " << slices[i].level << " < " << slices[j].level << " obstructed";
            o.fail(why.str());
          }
        }
    }
  });

  return failures;
}
