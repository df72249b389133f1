#include "slicelab/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "slicelab/regions.hpp"

namespace slicelab {

namespace {

constexpr std::size_t kBeamWidth = 256;

struct State {
  std::string code;
  std::map<std::size_t, int> labels;  // crossing -> label
  std::vector<bool> used;
  std::vector<bool> reversed;
};

// Extends `s` by walking component `c` from occurrence `start`, forward or
// backward. Inter-component signs are written at the second visit, once both
// orientations are fixed.
State extend(const State& s, const SliceDiagram& d, const std::vector<Occurrence>& list,
             std::size_t c, std::size_t start, bool reverse) {
  State out = s;
  out.used[c] = true;
  out.reversed[c] = reverse;
  out.code += '|';
  const std::size_t n = list.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t idx = reverse ? (start + n - k) % n : (start + k) % n;
    const Occurrence& o = list[idx];
    const Crossing& x = d.crossings()[o.crossing];
    auto [it, fresh] = out.labels.emplace(o.crossing, static_cast<int>(out.labels.size()));
    out.code += std::to_string(it->second);
    out.code += x.over_strand < 0 ? '?' : (x.over_strand == o.strand ? 'O' : 'U');
    if (x.sign == 0) {
      out.code += '?';
    } else if (x.self_crossing() || !fresh) {
      int sign = x.sign;
      const auto c0 = x.strands[0].component, c1 = x.strands[1].component;
      if (!x.self_crossing() && out.reversed[c0] != out.reversed[c1]) sign = -sign;
      out.code += sign > 0 ? '+' : '-';
    }
    out.code += ',';
  }
  return out;
}

}  // namespace

EquivalenceKey equivalence_key(const SliceDiagram& diagram) {
  EquivalenceKey key;
  key.components = diagram.components().size();
  const auto occ = occurrences(diagram);
  for (const auto& r : regions(diagram)) key.areas.push_back(r.area);
  std::sort(key.areas.begin(), key.areas.end());

  std::vector<State> beam{State{{}, {}, std::vector<bool>(key.components, false),
                                std::vector<bool>(key.components, false)}};
  for (std::size_t step = 0; step < key.components; ++step) {
    std::vector<State> next;
    for (const State& s : beam) {
      for (std::size_t c = 0; c < key.components; ++c) {
        if (s.used[c]) continue;
        const auto& list = occ[c];
        if (list.empty()) {
          next.push_back(extend(s, diagram, list, c, 0, false));
          continue;
        }
        for (std::size_t start = 0; start < list.size(); ++start)
          for (bool rev : {false, true}) next.push_back(extend(s, diagram, list, c, start, rev));
      }
    }
    const auto best = std::min_element(next.begin(), next.end(),
                                       [](const State& a, const State& b) { return a.code < b.code; });
    const std::string target = best->code;
    beam.clear();
    for (State& s : next) {
      if (s.code != target) continue;
      beam.push_back(std::move(s));
      if (beam.size() >= kBeamWidth) break;
    }
  }
  key.code = beam.front().code;
  return key;
}

bool equivalent(const EquivalenceKey& a, const EquivalenceKey& b, double rel_tol) {
  if (a.components != b.components || a.code != b.code || a.areas.size() != b.areas.size())
    return false;
  for (std::size_t i = 0; i < a.areas.size(); ++i) {
    const double scale = std::max({std::abs(a.areas[i]), std::abs(b.areas[i]), 1e-300});
    if (std::abs(a.areas[i] - b.areas[i]) > rel_tol * scale) return false;
  }
  return true;
}

bool equivalent(const SliceDiagram& a, const SliceDiagram& b) {
  return equivalent(equivalence_key(a), equivalence_key(b),
                    std::max(a.tolerance(), b.tolerance()));
}

}  // namespace slicelab
