#pragma once

#include <string>

#include "slicelab/diagram.hpp"

namespace slicelab {

struct SvgOptions {
  int width = 640;
  double under_gap_px = 3.0;
  bool area_labels = true;
};

/// Closed paths per component, a gap in the under strand at each crossing,
/// and region areas written at interior points.
std::string render_svg(const SliceDiagram& diagram, const SvgOptions& options = {});

}  // namespace slicelab
