#include "slicelab/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "slicelab/diagram.hpp"

namespace slicelab {

const char* to_string(Capacity c) {
  switch (c) {
    case Capacity::LowerPlus:
      return "c+";
    case Capacity::LowerMinus:
      return "c-";
    case Capacity::UpperPlus:
      return "C+";
    case Capacity::UpperMinus:
      return "C-";
  }
  return "?";
}

bool is_lower(Capacity c) { return c == Capacity::LowerPlus || c == Capacity::LowerMinus; }

Location location_of(Capacity c) {
  return (c == Capacity::LowerPlus || c == Capacity::UpperPlus) ? Location::PPlus
                                                                : Location::PMinus;
}

std::string CohomologyClass::name() const {
  if (diagonal) return "diagonal-H0";
  std::string out = "H" + std::to_string(degree) + "[";
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(support[i]);
  }
  return out + "]";
}

std::optional<double> CapacityStatus::forced_value() const {
  if (kind == Kind::ForcedZero) return 0.0;
  if (kind == Kind::ForcedValue) return value;
  return std::nullopt;
}

const char* to_string(CapacityStatus::Kind k) {
  switch (k) {
    case CapacityStatus::Kind::ForcedZero:
      return "forced-zero";
    case CapacityStatus::Kind::ForcedValue:
      return "forced-value";
    case CapacityStatus::Kind::CandidateSet:
      return "candidate-set";
    case CapacityStatus::Kind::Unknown:
      return "unknown";
  }
  return "unknown";
}

const char* to_string(SliceVerdict::Kind k) {
  switch (k) {
    case SliceVerdict::Kind::Impossible:
      return "impossible";
    case SliceVerdict::Kind::ImpossibleAsConnectSum:
      return "impossible-as-connect-sum";
    case SliceVerdict::Kind::NoObstruction:
      return "no-obstruction";
    case SliceVerdict::Kind::NonGeneric:
      return "non-generic";
  }
  return "?";
}

bool ClassReport::all_forced_zero() const {
  return std::all_of(caps.begin(), caps.end(), [](const CapacityStatus& s) {
    return s.kind == CapacityStatus::Kind::ForcedZero;
  });
}

const ClassReport* CapacityReport::diagonal() const {
  for (const auto& c : classes)
    if (c.cls.diagonal) return &c;
  return nullptr;
}

const ClassReport* CapacityReport::find(int degree, std::size_t component) const {
  for (const auto& c : classes)
    if (c.cls.degree == degree && c.cls.support == std::vector<std::size_t>{component})
      return &c;
  return nullptr;
}

std::vector<CohomologyClass> analyzed_classes(std::size_t components) {
  std::vector<CohomologyClass> out;
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < components; ++i) all.push_back(i);
  if (components > 0) out.push_back({0, all, true});
  for (int degree : {0, 1})
    for (std::size_t i = 0; i < components; ++i) {
      if (degree == 0 && components == 1) continue;  // same as the diagonal class
      out.push_back({degree, {i}, false});
    }
  return out;
}

namespace {

void insert_distinct(std::vector<double>& values, double v) {
  for (double w : values)
    if (std::abs(v - w) <= 1e-9 * std::max(1.0, std::abs(w))) return;
  values.push_back(v);
}

std::string location_tag(Location l) { return to_string(l); }

std::string format_set(const CandidateValues& c) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < c.values.size(); ++i) os << (i ? "," : "") << c.values[i];
  if (c.wildcard) os << (c.values.empty() ? "" : ",") << "*";
  os << "}";
  return os.str();
}

int target_offset(const CohomologyClass& cls, Capacity cap) {
  return is_lower(cap) ? cls.degree : cls.degree + 2;
}

std::string cap_calc_tag(const CohomologyClass& cls, Capacity cap, const std::string& what) {
  return "cap-calc(" + location_tag(location_of(cap)) + ",offset" +
         std::to_string(target_offset(cls, cap)) + "," + what + ")";
}

void force_zero(CapacityStatus& s, std::string why) {
  s.kind = CapacityStatus::Kind::ForcedZero;
  s.value = 0.0;
  s.chain.push_back(std::move(why));
}

}  // namespace

CandidateValues candidate_values(const MorseTable& table, const CohomologyClass& cls,
                                 Capacity cap) {
  CandidateValues out;
  const Location loc = location_of(cap);
  const int offset = target_offset(cls, cap);
  for (const auto& row : table.rows) {
    if (row.symbolic()) {
      out.wildcard = true;
      continue;
    }
    if (row.location != loc || row.offset != offset) continue;
    const double v = *row.value;
    if (is_lower(cap) ? v < 0.0 : v > 0.0) insert_distinct(out.values, v);
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

CapacityReport initial_report(const MorseTable& table, bool assume_negative_slice) {
  CapacityReport report;
  report.assume_negative_slice = assume_negative_slice;
  for (const auto& cls : analyzed_classes(table.topology.components)) {
    ClassReport cr;
    cr.cls = cls;
    for (Capacity cap : kAllCapacities) {
      CapacityStatus& s = cr[cap];
      s.kind = CapacityStatus::Kind::CandidateSet;
      s.candidates = candidate_values(table, cls, cap);
    }
    report.classes.push_back(std::move(cr));
  }
  return report;
}

bool apply_index_vanishing(CapacityReport& report, const MorseTable&) {
  bool changed = false;
  for (auto& cr : report.classes)
    for (Capacity cap : kAllCapacities) {
      CapacityStatus& s = cr[cap];
      if (s.forced() || !s.candidates.empty()) continue;
      force_zero(s, cap_calc_tag(cr.cls, cap, "empty"));
      changed = true;
    }
  return changed;
}

bool apply_pullback_vanishing(CapacityReport& report) {
  bool changed = false;
  for (auto& cr : report.classes) {
    if (!cr.cls.diagonal) continue;
    for (Capacity cap : {Capacity::LowerPlus, Capacity::UpperMinus}) {
      CapacityStatus& s = cr[cap];
      if (s.kind == CapacityStatus::Kind::ForcedZero) continue;
      force_zero(s, std::string("vanishing-capacities(diagonal,") + to_string(cap) + ")");
      changed = true;
    }
  }
  return changed;
}

bool apply_rank_surjection(CapacityReport& report, const MorseTable& table, bool mirrored) {
  if (table.topology.components != 1 || table.has_symbolic()) return false;
  // Mirrored form: negate values and replace offset k by 3 - k.
  const double flip = mirrored ? -1.0 : 1.0;
  std::vector<double> low, high;  // offset-2 and offset-3 values, both positive after flipping
  for (const auto& row : table.rows) {
    if (!row.crossing) continue;
    const double v = flip * *row.value;
    const int k = mirrored ? 3 - *row.offset : *row.offset;
    if (v <= 0.0) continue;
    if (k == 2) low.push_back(v);
    if (k == 3) insert_distinct(high, v);
  }
  if (low.empty() || high.size() <= table.topology.h1) return false;
  if (*std::min_element(high.begin(), high.end()) <= *std::max_element(low.begin(), low.end()))
    return false;

  const int degree = mirrored ? 1 : 0;
  const Capacity cap = mirrored ? Capacity::LowerMinus : Capacity::UpperPlus;
  std::ostringstream why;
  why << "rank-surjection(" << (mirrored ? "offset1>offset0" : "offset2<offset3") << ",count="
      << high.size() << ">h1=" << table.topology.h1 << ")";
  bool changed = false;
  for (auto& cr : report.classes) {
    if (cr.cls.degree != degree) continue;
    CapacityStatus& s = cr[cap];
    if (s.kind == CapacityStatus::Kind::ForcedZero) continue;
    force_zero(s, why.str());
    changed = true;
  }
  return changed;
}

bool apply_nonvanishing(CapacityReport& report) {
  bool changed = false;
  for (auto& cr : report.classes) {
    std::vector<Capacity> open;
    for (Capacity cap : kAllCapacities)
      if (cr[cap].kind != CapacityStatus::Kind::ForcedZero) open.push_back(cap);
    if (open.size() != 1) continue;
    CapacityStatus& s = cr[open.front()];
    if (s.forced() || s.candidates.wildcard || s.candidates.values.size() != 1) continue;
    s.kind = CapacityStatus::Kind::ForcedValue;
    s.value = s.candidates.values.front();
    s.chain.push_back(cap_calc_tag(cr.cls, open.front(), format_set(s.candidates)));
    s.chain.push_back(std::string("non-vanishing(") + to_string(open.front()) + " only nonzero)");
    changed = true;
  }
  return changed;
}

namespace {

struct RuleSet {
  bool pullback = true;
  bool nonvanishing = true;
  bool mirrored = false;
};

SliceVerdict run_rules(CapacityReport& report, const MorseTable& table, const RuleSet& rules,
                       SliceVerdict::Kind impossible_kind) {
  for (int guard = 0; guard < 16; ++guard) {
    bool changed = apply_index_vanishing(report, table);
    if (rules.pullback) changed |= apply_pullback_vanishing(report);
    changed |= apply_rank_surjection(report, table, false);
    if (rules.mirrored) changed |= apply_rank_surjection(report, table, true);
    if (rules.nonvanishing) changed |= apply_nonvanishing(report);
    if (!changed) break;
  }
  SliceVerdict verdict;
  for (const auto& cr : report.classes) {
    if (!cr.all_forced_zero()) continue;
    verdict.kind = impossible_kind;
    verdict.witness = cr.cls;
    for (Capacity cap : kAllCapacities)
      for (const auto& step : cr[cap].chain) verdict.chain.push_back(to_string(cap) + (": " + step));
    return verdict;
  }
  return verdict;
}

SliceVerdict non_generic(const NonGenericError& e) {
  SliceVerdict v;
  v.kind = SliceVerdict::Kind::NonGeneric;
  v.message = e.what();
  v.location = e.location;
  return v;
}

Analysis analyze_with(const SliceDiagram& diagram, bool assume, const RuleSet& rules) {
  Analysis out;
  out.report.assume_negative_slice = assume;
  if (diagram.empty()) return out;
  try {
    out.table = morse_table(diagram);
  } catch (const NonGenericError& e) {
    out.verdict = non_generic(e);
    return out;
  }
  out.report = initial_report(out.table, assume);
  out.verdict = run_rules(out.report, out.table, rules, SliceVerdict::Kind::Impossible);
  return out;
}

// Lower capacities of a union: the larger of the two pieces.
CapacityStatus max_rule(const CapacityStatus& a, const CapacityStatus& b, Capacity cap) {
  CapacityStatus out;
  const std::string tag = std::string("split-capacities(max,") + to_string(cap) + ")";
  if (a.kind == CapacityStatus::Kind::ForcedZero || b.kind == CapacityStatus::Kind::ForcedZero) {
    force_zero(out, tag);
    return out;
  }
  if (a.kind == CapacityStatus::Kind::ForcedValue && b.kind == CapacityStatus::Kind::ForcedValue) {
    out.kind = CapacityStatus::Kind::ForcedValue;
    out.value = std::max(a.value, b.value);
    out.candidates.values = {out.value};
    out.chain.push_back(tag);
    return out;
  }
  auto options = [](const CapacityStatus& s) {
    CandidateValues c = s.candidates;
    if (s.kind == CapacityStatus::Kind::ForcedValue) c.values = {s.value};
    return c;
  };
  const CandidateValues ca = options(a), cb = options(b);
  out.kind = CapacityStatus::Kind::CandidateSet;
  out.candidates.wildcard = ca.wildcard || cb.wildcard;
  for (double x : ca.values)
    for (double y : cb.values) insert_distinct(out.candidates.values, std::max(x, y));
  std::sort(out.candidates.values.begin(), out.candidates.values.end());
  return out;
}

}  // namespace

SliceVerdict run_pipeline(CapacityReport& report, const MorseTable& table,
                          const AnalysisOptions& options) {
  RuleSet rules;
  rules.pullback = rules.nonvanishing = options.assume_negative_slice;
  rules.mirrored = options.mirrored_rank_rule;
  return run_rules(report, table, rules, SliceVerdict::Kind::Impossible);
}

Analysis analyze(const SliceDiagram& diagram, const AnalysisOptions& options) {
  RuleSet rules;
  rules.pullback = rules.nonvanishing = options.assume_negative_slice;
  rules.mirrored = options.mirrored_rank_rule;
  return analyze_with(diagram, options.assume_negative_slice, rules);
}

Analysis connect_sum_analysis(const SliceDiagram& first, const SliceDiagram& second) {
  if (first.empty()) return analyze(second);
  if (second.empty()) return analyze(first);

  // Each piece on its own satisfies non-vanishing but not the pullback rule.
  RuleSet piece_rules;
  piece_rules.pullback = false;
  const Analysis a = analyze_with(first, true, piece_rules);
  const Analysis b = analyze_with(second, true, piece_rules);
  for (const Analysis* p : {&a, &b})
    if (p->verdict.kind == SliceVerdict::Kind::NonGeneric) {
      Analysis out;
      out.verdict = p->verdict;
      return out;
    }

  Analysis out;
  out.table = morse_table(sum(first, second));
  out.report.assume_negative_slice = true;
  ClassReport diag;
  diag.cls = analyzed_classes(out.table.topology.components).front();
  for (Capacity cap : kAllCapacities) {
    if (is_lower(cap)) {
      diag[cap] = max_rule((*a.report.diagonal())[cap], (*b.report.diagonal())[cap], cap);
    } else {
      diag[cap].kind = CapacityStatus::Kind::CandidateSet;
      diag[cap].candidates = candidate_values(out.table, diag.cls, cap);
    }
  }
  out.report.classes.push_back(std::move(diag));
  out.verdict =
      run_rules(out.report, out.table, RuleSet{}, SliceVerdict::Kind::ImpossibleAsConnectSum);
  return out;
}

}  // namespace slicelab
