#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "slicelab/diagram.hpp"

namespace slicelab {

/// Combinatorial and metric fingerprint of a diagram up to area-preserving
/// planar motions.
struct EquivalenceKey {
  std::size_t components = 0;
  std::string code;           // signed Gauss code, one block per component
  std::vector<double> areas;  // sorted region areas

  friend bool operator==(const EquivalenceKey&, const EquivalenceKey&) = default;
};

EquivalenceKey equivalence_key(const SliceDiagram& diagram);

/// Same code and component count, region areas within `rel_tol` relative.
bool equivalent(const EquivalenceKey& a, const EquivalenceKey& b, double rel_tol);

/// Compares keys with the larger of the two diagram tolerances.
bool equivalent(const SliceDiagram& a, const SliceDiagram& b);

}  // namespace slicelab
