#pragma once

#include <optional>
#include <string>

#include "slicelab/capacity.hpp"

namespace slicelab {

struct RelationQuery {
  SliceDiagram bottom;
  SliceDiagram top;
  bool strict = false;
};

/// One failed monotonicity inequality.
struct Violation {
  Capacity capacity = Capacity::LowerMinus;
  std::string cls;
  double bottom = 0.0;
  double top = 0.0;
  bool strict = false;
};

struct RelationVerdict {
  enum class Kind { Obstructed, ReflexiveEquivalent, NoObstructionFound, Witnessed, NonGeneric };
  Kind kind = Kind::NoObstructionFound;
  std::optional<Violation> violation;  // Obstructed only
  std::string witness;                 // Witnessed only: reference to the sweep
  std::string message;                 // NonGeneric only
};

const char* to_string(RelationVerdict::Kind k);

struct RelationOptions {
  /// Also compare degree-1 classes of connected ends.
  bool degree_one = false;
};

RelationVerdict check_relation(const RelationQuery& query, const RelationOptions& options = {});

struct SumCompatibility {
  RelationVerdict first;
  RelationVerdict second;
  std::optional<RelationVerdict> summed;  // present when neither part is obstructed
  bool consistent = true;
};

SumCompatibility sum_compatibility(const RelationQuery& q1, const RelationQuery& q2);

struct ChainBound {
  int bound = 1;
  bool upper_estimate = false;  // symbolic rows present
};

/// One more than the number of distinct negative critical values.
ChainBound strict_chain_bound(const SliceDiagram& diagram);

struct AntisymmetryResult {
  bool applicable = true;  // false for equivalent inputs
  bool excluded = false;   // mutual relation ruled out
  std::string reason;
};

AntisymmetryResult antisymmetry_check(const SliceDiagram& d1, const SliceDiagram& d2);

}  // namespace slicelab
