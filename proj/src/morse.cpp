#include "slicelab/morse.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace slicelab {

const char* to_string(Location loc) {
  switch (loc) {
    case Location::PPlus:
      return "P+";
    case Location::PMinus:
      return "P-";
    case Location::None:
      return "none";
  }
  return "none";
}

bool MorseTable::has_symbolic() const {
  for (const auto& r : rows)
    if (r.symbolic()) return true;
  return false;
}

namespace {

const Crossing& crossing_at(const SliceDiagram& d, std::size_t crossing, int branch) {
  if (crossing >= d.crossings().size()) throw InvalidInput("crossing index out of range");
  if (branch != 0 && branch != 1) throw InvalidInput("branch must be 0 or 1");
  return d.crossings()[crossing];
}

// Path along the component from the other strand's preimage to the branch's
// own preimage.
std::vector<Vec2> capping_path(const SliceDiagram& d, const Crossing& x, int branch,
                               CappingArc arc) {
  const StrandRef& own = x.strands[branch];
  const StrandRef& other = x.strands[1 - branch];
  const PlanarPolyline& poly = d.components()[own.component];
  if (arc == CappingArc::Forward) return forward_path(poly, other.param(), own.param());
  std::vector<Vec2> back = forward_path(poly, own.param(), other.param());
  return {back.rbegin(), back.rend()};
}

double line_angle_mod_pi(Vec2 v) {
  double a = std::fmod(std::atan2(v.y, v.x), std::numbers::pi);
  if (a < 0) a += std::numbers::pi;
  return a;
}

}  // namespace

std::optional<double> capping_value(const SliceDiagram& d, std::size_t crossing, int branch,
                                    CappingArc arc) {
  const Crossing& x = crossing_at(d, crossing, branch);
  if (!x.self_crossing()) return std::nullopt;
  return -shoelace(capping_path(d, x, branch, arc));
}

std::optional<int> capping_index_offset(const SliceDiagram& d, std::size_t crossing, int branch,
                                        CappingArc arc) {
  const Crossing& x = crossing_at(d, crossing, branch);
  if (!x.self_crossing()) return std::nullopt;
  const std::vector<Vec2> path = capping_path(d, x, branch, arc);
  std::vector<Vec2> dirs;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) dirs.push_back(path[i + 1] - path[i]);
  double rotation = 0.0;
  for (std::size_t i = 0; i + 1 < dirs.size(); ++i) rotation += signed_angle(dirs[i], dirs[i + 1]);
  // Close the loop of tangent lines by turning clockwise back to the start.
  double closure = line_angle_mod_pi(dirs.back()) - line_angle_mod_pi(dirs.front());
  if (closure <= 0) closure += std::numbers::pi;
  const int mu = static_cast<int>(std::lround((rotation - closure) / std::numbers::pi));
  return 1 - mu;
}

Location location(const SliceDiagram& d, std::size_t crossing, int branch) {
  const Crossing& x = crossing_at(d, crossing, branch);
  if (x.over_strand < 0) throw InvalidInput("diagram carries no lift");
  // The over strand has the larger lift.
  return x.over_strand == branch ? Location::PMinus : Location::PPlus;
}

MorseTable morse_table(const SliceDiagram& d) {
  MorseTable table;
  const std::size_t n = d.components().size();
  table.topology = {n, n, n};
  if (d.empty()) return table;
  const double scale = d.scale();
  const double zero_tol = d.tolerance() * scale * scale;
  for (std::size_t i = 0; i < d.crossings().size(); ++i) {
    for (int b = 0; b < 2; ++b) {
      CriticalDatum row;
      row.crossing = i;
      row.branch = b;
      row.location = location(d, i, b);
      row.value = capping_value(d, i, b);
      row.offset = capping_index_offset(d, i, b);
      row.pair_id = i;
      if (row.value && std::abs(*row.value) <= zero_tol)
        throw NonGenericError("crossing with critical value 0", d.crossings()[i].point);
      if (row.offset && (*row.offset < 0 || *row.offset > 3)) {
        std::ostringstream msg;
        msg << "crossing " << i << " branch " << b << " has offset " << *row.offset
            << " outside 0..3";
        table.warnings.push_back(msg.str());
      }
      table.rows.push_back(row);
    }
  }
  CriticalDatum sub;
  sub.value = 0.0;
  sub.offset = 1;
  sub.pair_id = d.crossings().size();
  table.rows.push_back(sub);
  return table;
}

}  // namespace slicelab
