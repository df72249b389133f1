#include "slicelab/order.hpp"

#include <algorithm>
#include <cmath>

#include "slicelab/equivalence.hpp"

namespace slicelab {

const char* to_string(RelationVerdict::Kind k) {
  switch (k) {
    case RelationVerdict::Kind::Obstructed:
      return "obstructed";
    case RelationVerdict::Kind::ReflexiveEquivalent:
      return "reflexive-equivalent";
    case RelationVerdict::Kind::NoObstructionFound:
      return "no-obstruction-found";
    case RelationVerdict::Kind::Witnessed:
      return "witnessed";
    case RelationVerdict::Kind::NonGeneric:
      return "non-generic";
  }
  return "?";
}

namespace {

double zero_tolerance(const SliceDiagram& a, const SliceDiagram& b) {
  const double s = std::max(a.empty() ? 0.0 : a.scale(), b.empty() ? 0.0 : b.scale());
  return std::max(a.tolerance(), b.tolerance()) * std::max(1.0, s * s);
}

// Returns the violated inequality, if any, for one capacity pair.
std::optional<Violation> compare(Capacity cap, const std::string& cls, double bot, double top,
                                 double tol) {
  const bool nonzero = std::abs(bot) > tol || std::abs(top) > tol;
  // Lower-plus and upper-plus grow with the level; the minus ones shrink.
  const bool increasing = cap == Capacity::LowerPlus || cap == Capacity::UpperPlus;
  const double gap = increasing ? top - bot : bot - top;
  const bool ok = nonzero ? gap > tol : gap >= -tol;
  if (ok) return std::nullopt;
  return Violation{cap, cls, bot, top, nonzero};
}

std::optional<Violation> compare_classes(const ClassReport* bot, const ClassReport* top,
                                         const std::string& name, double tol) {
  for (Capacity cap : kAllCapacities) {
    const auto b = bot ? (*bot)[cap].forced_value() : std::optional<double>(0.0);
    const auto t = top ? (*top)[cap].forced_value() : std::optional<double>(0.0);
    if (!b || !t) continue;
    if (auto v = compare(cap, name, *b, *t, tol)) return v;
  }
  return std::nullopt;
}

}  // namespace

RelationVerdict check_relation(const RelationQuery& query, const RelationOptions& options) {
  RelationVerdict out;
  if (!query.strict && equivalent(query.bottom, query.top)) {
    out.kind = RelationVerdict::Kind::ReflexiveEquivalent;
    return out;
  }
  if (query.bottom.empty()) return out;

  const Analysis bot = analyze(query.bottom);
  const Analysis top = analyze(query.top);
  for (const Analysis* a : {&bot, &top})
    if (a->verdict.kind == SliceVerdict::Kind::NonGeneric) {
      out.kind = RelationVerdict::Kind::NonGeneric;
      out.message = a->verdict.message;
      return out;
    }

  const double tol = zero_tolerance(query.bottom, query.top);
  // An empty top has every capacity equal to zero.
  auto violation = compare_classes(bot.report.diagonal(), top.report.diagonal(), "diagonal-H0", tol);
  if (!violation && options.degree_one && bot.table.topology.components == 1 &&
      top.table.topology.components <= 1)
    violation = compare_classes(bot.report.find(1, 0), top.report.find(1, 0), "H1[0]", tol);
  if (violation) {
    out.kind = RelationVerdict::Kind::Obstructed;
    out.violation = violation;
  }
  return out;
}

SumCompatibility sum_compatibility(const RelationQuery& q1, const RelationQuery& q2) {
  SumCompatibility out;
  out.first = check_relation(q1);
  out.second = check_relation(q2);
  if (out.first.kind == RelationVerdict::Kind::Obstructed ||
      out.second.kind == RelationVerdict::Kind::Obstructed)
    return out;
  RelationQuery summed{sum(q1.bottom, q2.bottom), sum(q1.top, q2.top), q1.strict && q2.strict};
  out.summed = check_relation(summed);
  out.consistent = out.summed->kind != RelationVerdict::Kind::Obstructed;
  return out;
}

ChainBound strict_chain_bound(const SliceDiagram& diagram) {
  ChainBound out;
  if (diagram.empty()) return out;
  const MorseTable table = morse_table(diagram);
  std::vector<double> negatives;
  for (const auto& row : table.rows) {
    if (row.symbolic()) {
      out.upper_estimate = true;
      continue;
    }
    if (*row.value >= 0.0) continue;
    const double v = *row.value;
    const bool seen = std::any_of(negatives.begin(), negatives.end(), [&](double w) {
      return std::abs(v - w) <= 1e-9 * std::max(1.0, std::abs(w));
    });
    if (!seen) negatives.push_back(v);
  }
  out.bound = static_cast<int>(negatives.size()) + 1;
  return out;
}

AntisymmetryResult antisymmetry_check(const SliceDiagram& d1, const SliceDiagram& d2) {
  AntisymmetryResult out;
  if (equivalent(d1, d2)) {
    out.applicable = false;
    out.reason = "equivalent diagrams";
    return out;
  }
  for (const auto& [b, t] : {std::pair{&d1, &d2}, std::pair{&d2, &d1}}) {
    const RelationVerdict v = check_relation({*b, *t, false});
    if (v.kind == RelationVerdict::Kind::Obstructed) {
      out.excluded = true;
      out.reason = std::string("one direction obstructed by ") + to_string(v.violation->capacity);
      return out;
    }
  }
  if (d1.components().size() != 1 || d2.components().size() != 1) {
    out.reason = "disconnected input; no conclusion";
    return out;
  }
  for (const SliceDiagram* d : {&d1, &d2}) {
    const Analysis a = analyze(*d);
    const ClassReport* diag = a.report.diagonal();
    if (!diag) return out;
    for (Capacity cap : kAllCapacities)
      if (!(*diag)[cap].forced()) {
        out.reason = "capacities not all forced; no conclusion";
        return out;
      }
  }
  out.excluded = true;
  out.reason = "forced capacities and the strict chain bound exclude a mutual relation";
  return out;
}

}  // namespace slicelab
