#pragma once

#include <random>
#include <string>
#include <vector>

#include "slicelab/catalog.hpp"
#include "slicelab/diagram.hpp"

namespace slicelab::testing {

inline double draw_area(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.5, 4.0)(rng);
}

inline int draw_sign(std::mt19937_64& rng) { return rng() % 2 ? +1 : -1; }

/// Random catalog expression: eights, caterpillars, merges, nests and sums.
inline CatalogSpec random_catalog(std::mt19937_64& rng, int depth = 0) {
  const int pick = static_cast<int>(rng() % (depth == 0 ? 6 : 3));
  switch (pick) {
    case 0:
      return CatalogSpec::eight(draw_sign(rng), draw_area(rng));
    case 1:
    case 2: {
      const double a1 = draw_area(rng), a3 = draw_area(rng);
      const double a2 = std::uniform_real_distribution<double>(0.2, a1 + a3 - 0.2)(rng);
      return CatalogSpec::cat({draw_sign(rng), draw_sign(rng), draw_sign(rng)}, a1, a2, a3);
    }
    case 3: {
      std::vector<CatalogSpec> parts;
      const int n = 2 + static_cast<int>(rng() % 2);
      for (int i = 0; i < n; ++i) parts.push_back(random_catalog(rng, depth + 1));
      return CatalogSpec::sum(std::move(parts));
    }
    case 4: {
      const double a1 = draw_area(rng), a3 = draw_area(rng);
      const double a2 = std::uniform_real_distribution<double>(0.1, 0.9)(rng) * std::min(a1, a3);
      return CatalogSpec::merge(a1, a2, a3);
    }
    default: {
      const double outer = draw_area(rng) + 1.0;
      const double inner = std::uniform_real_distribution<double>(0.02, 0.1)(rng);
      return CatalogSpec::nest(CatalogSpec::eight(draw_sign(rng), inner),
                               CatalogSpec::eight(draw_sign(rng), outer));
    }
  }
}

/// Independent O(n^2) count of proper segment intersections, skipping
/// adjacent segments of the same component.
inline std::size_t brute_force_crossings(const std::vector<PlanarPolyline>& comps) {
  auto orient = [](Vec2 a, Vec2 b, Vec2 c) {
    const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return (v > 0) - (v < 0);
  };
  std::size_t count = 0;
  for (std::size_t c1 = 0; c1 < comps.size(); ++c1) {
    const auto& p = comps[c1].vertices;
    for (std::size_t c2 = c1; c2 < comps.size(); ++c2) {
      const auto& q = comps[c2].vertices;
      for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = (c1 == c2 ? i + 1 : 0); j < q.size(); ++j) {
          if (c1 == c2 && (j == i + 1 || (i == 0 && j == p.size() - 1))) continue;
          const Vec2 a = p[i], b = p[(i + 1) % p.size()];
          const Vec2 c = q[j], d = q[(j + 1) % q.size()];
          if (orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0) ++count;
        }
      }
    }
  }
  return count;
}

}  // namespace slicelab::testing
