#pragma once

#include <vector>

#include "slicelab/diagram.hpp"

namespace slicelab {

/// A bounded face of the planar arrangement formed by the diagram.
struct Region {
  double area = 0.0;        // outer boundary area minus enclosed holes
  double outer_area = 0.0;  // area enclosed by the outer boundary alone
  Vec2 label;               // a point inside the outer boundary
  std::vector<Vec2> boundary;
};

/// Bounded faces of the arrangement, in a deterministic order.
std::vector<Region> regions(const SliceDiagram& diagram);

}  // namespace slicelab
