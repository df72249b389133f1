#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "slicelab/diagram.hpp"

namespace slicelab {

enum class Location { PPlus, PMinus, None };

const char* to_string(Location loc);

/// One critical point (or the critical submanifold) of the difference function.
/// Value and offset are empty for crossings between different components.
struct CriticalDatum {
  std::optional<std::size_t> crossing;  // empty for the critical submanifold
  int branch = 0;
  Location location = Location::None;
  std::optional<int> offset;  // Morse index minus the fiber dimension
  std::optional<double> value;
  std::size_t pair_id = 0;

  bool symbolic() const { return !value.has_value(); }
};

struct SliceTopology {
  std::size_t components = 0;
  std::size_t h0 = 0;
  std::size_t h1 = 0;
};

struct MorseTable {
  std::vector<CriticalDatum> rows;
  SliceTopology topology;
  std::vector<std::string> warnings;

  bool has_symbolic() const;
};

/// Which of the two arcs joining the branch preimages caps the crossing.
enum class CappingArc { Forward, Backward };

/// Negative signed area enclosed by the capping path; empty when the strands
/// belong to different components.
std::optional<double> capping_value(const SliceDiagram& d, std::size_t crossing, int branch,
                                    CappingArc arc = CappingArc::Forward);

/// 1 minus the Maslov-type rotation count of the capping path.
std::optional<int> capping_index_offset(const SliceDiagram& d, std::size_t crossing, int branch,
                                        CappingArc arc = CappingArc::Forward);

/// P+ when the branch's own lift is below the other strand's lift.
/// Throws InvalidInput for unlifted diagrams.
Location location(const SliceDiagram& d, std::size_t crossing, int branch);

/// Full critical data. Throws NonGenericError when a crossing has value 0.
MorseTable morse_table(const SliceDiagram& d);

}  // namespace slicelab
