#pragma once

#include <span>
#include <vector>

#include "slicelab/geometry.hpp"

namespace slicelab {

/// c * b((x1 - p) / s) * b((x2 - q) / t) with the standard smooth bump b.
struct BumpTerm {
  double c = 1.0;
  double p = 0.0;
  double q = 0.0;
  double s = 1.0;
  double t = 1.0;
};

/// Bump b(u) = exp(-1 / (1 - u^2)) on |u| < 1 and its first two derivatives.
struct BumpJet {
  double b = 0.0, db = 0.0, d2b = 0.0;
};
BumpJet bump(double u);

struct SecondPartials {
  double f11 = 0.0, f12 = 0.0, f22 = 0.0;
};

/// Compactly supported function of (x1, x2) built from bump terms.
class GeneratingFamily {
 public:
  GeneratingFamily() = default;
  explicit GeneratingFamily(std::vector<BumpTerm> terms);

  const std::vector<BumpTerm>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }

  double value(Vec2 x) const;
  /// (dF/dx1, dF/dx2).
  Vec2 gradient(Vec2 x) const;
  SecondPartials hessian(Vec2 x) const;

  /// Union of the term boxes; a unit box when there are no terms.
  Box support() const;

 private:
  std::vector<BumpTerm> terms_;
};

std::vector<Vec2> partials(const GeneratingFamily& family, std::span<const Vec2> points);

/// Sampling lattice of nx by ny cells over a rectangle.
struct Grid {
  Box domain;
  int nx = 256;
  int ny = 256;

  double hx() const { return domain.width() / nx; }
  double hy() const { return domain.height() / ny; }
  Vec2 node(int i, int j) const { return {domain.xmin + i * hx(), domain.ymin + j * hy()}; }

  /// Support box enlarged by a margin of at least 10% on each side, shifted
  /// slightly off-center so symmetric features avoid grid lines.
  static Grid around(const GeneratingFamily& family, int cells);
};

}  // namespace slicelab
