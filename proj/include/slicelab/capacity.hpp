#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "slicelab/morse.hpp"

namespace slicelab {

/// c+, c- are the lower capacities, C+, C- the upper ones.
enum class Capacity { LowerPlus = 0, LowerMinus = 1, UpperPlus = 2, UpperMinus = 3 };

inline constexpr std::array<Capacity, 4> kAllCapacities{
    Capacity::LowerPlus, Capacity::LowerMinus, Capacity::UpperPlus, Capacity::UpperMinus};

const char* to_string(Capacity c);
bool is_lower(Capacity c);
Location location_of(Capacity c);

struct CohomologyClass {
  int degree = 0;
  std::vector<std::size_t> support;
  bool diagonal = false;

  std::string name() const;  // e.g. "diagonal-H0", "H1[0]"
};

struct CandidateValues {
  std::vector<double> values;  // distinct, ascending
  bool wildcard = false;

  bool empty() const { return values.empty() && !wildcard; }
};

struct CapacityStatus {
  enum class Kind { ForcedZero, ForcedValue, CandidateSet, Unknown };
  Kind kind = Kind::Unknown;
  double value = 0.0;  // ForcedValue only
  CandidateValues candidates;
  std::vector<std::string> chain;

  bool forced() const { return kind == Kind::ForcedZero || kind == Kind::ForcedValue; }
  /// The forced value, 0 for ForcedZero; empty unless forced.
  std::optional<double> forced_value() const;
};

const char* to_string(CapacityStatus::Kind k);

struct ClassReport {
  CohomologyClass cls;
  std::array<CapacityStatus, 4> caps;

  CapacityStatus& operator[](Capacity c) { return caps[static_cast<int>(c)]; }
  const CapacityStatus& operator[](Capacity c) const { return caps[static_cast<int>(c)]; }
  bool all_forced_zero() const;
};

struct CapacityReport {
  std::vector<ClassReport> classes;
  bool assume_negative_slice = true;

  const ClassReport* diagonal() const;
  const ClassReport* find(int degree, std::size_t component) const;
};

struct SliceVerdict {
  enum class Kind { Impossible, ImpossibleAsConnectSum, NoObstruction, NonGeneric };
  Kind kind = Kind::NoObstruction;
  std::optional<CohomologyClass> witness;
  std::vector<std::string> chain;
  std::string message;                 // NonGeneric only
  std::optional<Vec2> location;        // NonGeneric only
};

const char* to_string(SliceVerdict::Kind k);

struct AnalysisOptions {
  bool assume_negative_slice = true;
  /// Mirror of the rank-surjection rule forcing c- on degree-1 classes.
  bool mirrored_rank_rule = false;
};

struct Analysis {
  MorseTable table;
  CapacityReport report;
  SliceVerdict verdict;
};

/// Classes analyzed for a slice with `components` components: per-component
/// generators in degrees 0 and 1, plus the diagonal degree-0 class.
std::vector<CohomologyClass> analyzed_classes(std::size_t components);

CandidateValues candidate_values(const MorseTable& table, const CohomologyClass& cls,
                                 Capacity cap);

/// Fresh report holding the candidate sets of every analyzed class.
CapacityReport initial_report(const MorseTable& table, bool assume_negative_slice);

// Individual rules; each returns true when it changed the report.
bool apply_index_vanishing(CapacityReport& report, const MorseTable& table);
bool apply_pullback_vanishing(CapacityReport& report);
bool apply_rank_surjection(CapacityReport& report, const MorseTable& table,
                           bool mirrored = false);
bool apply_nonvanishing(CapacityReport& report);

/// Runs the rules in order until nothing changes.
SliceVerdict run_pipeline(CapacityReport& report, const MorseTable& table,
                          const AnalysisOptions& options);

Analysis analyze(const SliceDiagram& diagram, const AnalysisOptions& options = {});

/// Capacities of the diagonal class of a connect sum whose negative slice
/// has the two diagrams as its pieces.
Analysis connect_sum_analysis(const SliceDiagram& first, const SliceDiagram& second);

}  // namespace slicelab
