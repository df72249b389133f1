#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slicelab/catalog.hpp"
#include "slicelab/family.hpp"
#include "slicelab/order.hpp"

namespace slicelab {

struct Classification {
  std::optional<CatalogSpec> spec;  // empty when unclassified
  std::string label = "empty";      // catalog text, "empty" or "unclassified"
  std::string shape = "empty";      // label without areas
};

struct SliceResult {
  double level = 0.0;
  std::vector<std::vector<Vec2>> domain_loops;  // contours of dF/dx2 = level
  SliceDiagram diagram;                         // image under (x1, dF/dx1), lifted by x2
  Classification classification;
  std::vector<ComponentValidity> validity;
  double grid_tolerance = 0.0;
  double cell_size = 0.0;
};

struct SlicerOptions {
  /// Genuine double points have preimages at least this many cells apart.
  double min_preimage_cells = 3.0;
  /// Relative area tolerance for classification.
  double classify_tolerance = 0.02;
};

/// Slices the graph of dF at dF/dx2 = level. Throws InvalidInput for
/// level >= 0 and NonGenericError near critical levels.
SliceResult extract_slice(const GeneratingFamily& family, double level, const Grid& grid,
                          const SlicerOptions& options = {});

/// Recognizes sums of eights and caterpillars; never force-fits.
Classification classify(const SliceDiagram& diagram, double rel_tol = 0.02);

struct LevelSummary {
  double level = 0.0;
  bool non_generic = false;
  std::string message;  // non-generic reason
  std::string shape = "empty";
  std::string label = "empty";
  std::size_t components = 0;
  std::size_t crossings = 0;
  std::vector<double> areas;  // sorted region areas

  /// Topological descriptor compared between levels.
  std::string descriptor() const;
};

struct TransitionEvent {
  double lo = 0.0;
  double hi = 0.0;
  std::string from;
  std::string to;
};

struct SweepResult {
  std::vector<LevelSummary> levels;
  std::vector<TransitionEvent> events;
};

LevelSummary summarize_level(const GeneratingFamily& family, double level, const Grid& grid);

/// Samples `steps` levels evenly in [lo, hi] and bisects each change of
/// descriptor down to 1e-3 of the range.
SweepResult sweep(const GeneratingFamily& family, double lo, double hi, int steps,
                  const Grid& grid);

struct Witness {
  SliceResult bottom;
  SliceResult top;
  RelationVerdict verdict;
};

/// The family between the two levels realizes the bottom slice below the top one.
Witness witness_relation(const GeneratingFamily& family, double a, double b, const Grid& grid);

}  // namespace slicelab
