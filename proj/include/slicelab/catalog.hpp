#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "slicelab/diagram.hpp"

namespace slicelab {

enum class CatalogKind { EightPlus, EightMinus, Cat, Sum, Nest, Merge };

/// Expression tree naming a catalog diagram, e.g. `8+(1)` or
/// `C(-,+,-;3,1,2)`. Areas are lobe areas; signs are crossing signs.
struct CatalogSpec {
  CatalogKind kind = CatalogKind::EightPlus;
  std::array<int, 3> signs{};   // Cat only
  std::vector<double> areas;    // 1 for eights, 3 for Cat and Merge
  std::vector<CatalogSpec> children;  // Sum: summands; Nest: {inner, outer}

  static CatalogSpec eight(int sign, double area);
  static CatalogSpec cat(std::array<int, 3> signs, double a1, double a2, double a3);
  static CatalogSpec sum(std::vector<CatalogSpec> parts);
  static CatalogSpec nest(CatalogSpec inner, CatalogSpec outer);
  static CatalogSpec merge(double a1, double a2, double a3);

  friend bool operator==(const CatalogSpec&, const CatalogSpec&) = default;
};

class CatalogSyntaxError : public InvalidInput {
 public:
  CatalogSyntaxError(const std::string& what, std::size_t pos);
  std::size_t position;
};

class CatalogConstraintError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Parses the catalog grammar; validates area constraints.
CatalogSpec parse_catalog(std::string_view text);

/// Throws CatalogConstraintError when an area constraint fails.
void validate_catalog(const CatalogSpec& spec);

/// Canonical text form accepted by parse_catalog.
std::string to_string(const CatalogSpec& spec);

/// Catalog text without areas, e.g. `C(+,-,+)` or `8+ + 8+`.
std::string shape_string(const CatalogSpec& spec);

/// Polyline realization with exact lobe areas (to rounding).
SliceDiagram realize_catalog(const CatalogSpec& spec);

}  // namespace slicelab
