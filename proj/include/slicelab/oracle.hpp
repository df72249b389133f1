#pragma once

#include <array>
#include <cstddef>

#include "slicelab/family.hpp"
#include "slicelab/slicer.hpp"

namespace slicelab {

/// Critical point of the difference function (x1, x2, x2') ->
/// F(x1, x2) - F(x1, x2') - a (x2 - x2').
struct OraclePoint {
  double x1 = 0.0;
  double x2 = 0.0;        // this branch's lift
  double x2_other = 0.0;  // the other branch's lift
  double value = 0.0;
  int index = 0;  // number of negative Hessian eigenvalues
  double min_abs_eigenvalue = 0.0;
  int iterations = 0;
};

struct OracleResult {
  std::array<OraclePoint, 2> branches;  // indexed like the crossing strands
  bool near_singular = false;
};

class OracleError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

double difference_function(const GeneratingFamily& f, double level, double x1, double x2,
                           double x2_other);

/// Refines both branch critical points from a crossing of an extracted slice
/// by Newton iteration and classifies them. Throws OracleError on divergence.
OracleResult hessian_oracle(const GeneratingFamily& family, const SliceResult& slice,
                            std::size_t crossing);

}  // namespace slicelab
