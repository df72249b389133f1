#include "slicelab/json_io.hpp"

namespace slicelab {

namespace {

Json vec(Vec2 v) { return Json::array({v.x, v.y}); }

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidInput(std::string("field '") + key + "' has the wrong type");
  }
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json("symbolic"); }

}  // namespace

Json diagram_to_json(const SliceDiagram& d) {
  Json comps = Json::array();
  for (const auto& c : d.components()) {
    Json verts = Json::array();
    for (const Vec2& v : c.vertices) verts.push_back(vec(v));
    Json jc{{"vertices", verts}, {"closed", c.closed}};
    if (c.lifted()) jc["lift"] = c.lift;
    comps.push_back(jc);
  }
  return {{"components", comps}, {"tolerance", d.tolerance()}};
}

Json diagram_details(const SliceDiagram& d) {
  Json out = diagram_to_json(d);
  Json xs = Json::array();
  for (std::size_t i = 0; i < d.crossings().size(); ++i) {
    const Crossing& x = d.crossings()[i];
    Json strands = Json::array();
    for (const auto& s : x.strands)
      strands.push_back({{"component", s.component}, {"segment", s.segment}, {"t", s.t}});
    xs.push_back({{"id", i}, {"point", vec(x.point)}, {"strands", strands},
                  {"over", x.over_strand}, {"sign", x.sign}});
  }
  out["crossings"] = xs;
  Json regs = Json::array();
  for (const Region& r : regions(d)) regs.push_back({{"area", r.area}, {"label", vec(r.label)}});
  out["regions"] = regs;
  Json val = Json::array();
  for (const auto& v : validity_report(d))
    val.push_back({{"signed_area", v.signed_area},
                   {"area_residual", v.area_residual},
                   {"area_ok", v.area_ok},
                   {"turning", v.turning},
                   {"winding_ok", v.winding_ok}});
  out["validity"] = val;
  return out;
}

SliceDiagram diagram_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("diagram must be a JSON object");
  const Json comps = field<Json>(j, "components");
  if (!comps.is_array()) throw InvalidInput("'components' must be an array");
  std::vector<PlanarPolyline> out;
  for (const Json& c : comps) {
    if (!c.is_object()) throw InvalidInput("component must be an object");
    PlanarPolyline p;
    for (const Json& v : field<Json>(c, "vertices")) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw InvalidInput("vertex must be [x1, y1]");
      p.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    if (c.contains("lift")) p.lift = field<std::vector<double>>(c, "lift");
    if (c.contains("closed")) p.closed = field<bool>(c, "closed");
    out.push_back(std::move(p));
  }
  const double tol = j.contains("tolerance") ? field<double>(j, "tolerance") : 1e-9;
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  return SliceDiagram::build(std::move(out), tol);
}

Json to_json(const EquivalenceKey& key) {
  return {{"components", key.components}, {"code", key.code}, {"areas", key.areas}};
}

Json to_json(const MorseTable& table) {
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    Json row;
    row["source"] = r.crossing ? Json(*r.crossing) : Json("critical-submanifold");
    row["branch"] = r.branch;
    row["location"] = to_string(r.location);
    row["offset"] = r.offset ? Json(*r.offset) : Json("symbolic");
    row["value"] = optional_number(r.value);
    row["pair"] = r.pair_id;
    rows.push_back(row);
  }
  return {{"rows", rows},
          {"topology",
           {{"components", table.topology.components},
            {"h0", table.topology.h0},
            {"h1", table.topology.h1}}},
          {"warnings", table.warnings}};
}

Json to_json(const CapacityStatus& s) {
  Json out{{"status", to_string(s.kind)}, {"chain", s.chain}};
  if (s.kind == CapacityStatus::Kind::ForcedValue) out["value"] = s.value;
  if (s.kind == CapacityStatus::Kind::ForcedZero) out["value"] = 0.0;
  if (s.kind == CapacityStatus::Kind::CandidateSet) {
    out["candidates"] = s.candidates.values;
    out["wildcard"] = s.candidates.wildcard;
  }
  return out;
}

Json to_json(const CapacityReport& report) {
  Json classes = Json::array();
  for (const auto& cr : report.classes) {
    Json c{{"degree", cr.cls.degree},
           {"support", cr.cls.support},
           {"diagonal", cr.cls.diagonal},
           {"name", cr.cls.name()}};
    for (Capacity cap : kAllCapacities) c[to_string(cap)] = to_json(cr[cap]);
    classes.push_back(c);
  }
  return {{"classes", classes}, {"assume_negative_slice", report.assume_negative_slice}};
}

Json to_json(const SliceVerdict& v) {
  Json out{{"result", to_string(v.kind)}};
  if (v.witness) out["class"] = v.witness->name();
  if (!v.chain.empty()) out["chain"] = v.chain;
  if (!v.message.empty()) out["message"] = v.message;
  if (v.location) out["location"] = vec(*v.location);
  return out;
}

Json to_json(const Analysis& a) {
  Json out = to_json(a.report);
  out["verdict"] = to_json(a.verdict);
  out["morse"] = to_json(a.table);
  return out;
}

Json to_json(const RelationVerdict& v) {
  Json out{{"result", to_string(v.kind)}};
  if (v.violation) {
    out["capacity"] = to_string(v.violation->capacity);
    out["class"] = v.violation->cls;
    out["bottom"] = v.violation->bottom;
    out["top"] = v.violation->top;
    out["strict"] = v.violation->strict;
  }
  if (!v.witness.empty()) out["witness"] = v.witness;
  if (!v.message.empty()) out["message"] = v.message;
  return out;
}

Json to_json(const ChainBound& b) {
  return {{"bound", b.bound}, {"upper_estimate", b.upper_estimate}};
}

Json to_json(const GeneratingFamily& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms())
    terms.push_back({{"c", t.c}, {"p", t.p}, {"q", t.q}, {"s", t.s}, {"t", t.t}});
  return {{"terms", terms}};
}

GeneratingFamily family_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("family must be a JSON object");
  const Json terms = field<Json>(j, "terms");
  if (!terms.is_array()) throw InvalidInput("'terms' must be an array");
  std::vector<BumpTerm> out;
  for (const Json& t : terms) {
    if (!t.is_object()) throw InvalidInput("term must be an object");
    BumpTerm b;
    b.c = field<double>(t, "c");
    b.p = field<double>(t, "p");
    b.q = field<double>(t, "q");
    b.s = field<double>(t, "s");
    b.t = field<double>(t, "t");
    out.push_back(b);
  }
  return GeneratingFamily(std::move(out));
}

Json to_json(const Classification& c) {
  Json out{{"label", c.label}, {"shape", c.shape}, {"classified", c.spec.has_value()}};
  if (c.spec) {
    if (c.spec->kind == CatalogKind::Sum) {
      Json parts = Json::array();
      for (const auto& p : c.spec->children) parts.push_back(to_string(p));
      out["summands"] = parts;
    }
  }
  return out;
}

Json to_json(const SliceResult& s) {
  return {{"level", s.level},
          {"classification", to_json(s.classification)},
          {"diagram", diagram_details(s.diagram)},
          {"grid_tolerance", s.grid_tolerance},
          {"cell_size", s.cell_size},
          {"morse", s.diagram.empty() ? Json(nullptr) : to_json(morse_table(s.diagram))}};
}

Json to_json(const LevelSummary& l) {
  Json out{{"level", l.level},
           {"shape", l.shape},
           {"label", l.label},
           {"components", l.components},
           {"crossings", l.crossings},
           {"areas", l.areas},
           {"non_generic", l.non_generic}};
  if (l.non_generic) out["message"] = l.message;
  return out;
}

Json to_json(const TransitionEvent& e) {
  return {{"lo", e.lo}, {"hi", e.hi}, {"from", e.from}, {"to", e.to}};
}

Json to_json(const SweepResult& s) {
  Json levels = Json::array(), events = Json::array();
  for (const auto& l : s.levels) levels.push_back(to_json(l));
  for (const auto& e : s.events) events.push_back(to_json(e));
  return {{"levels", levels}, {"events", events}};
}

Json to_json(const OracleResult& o) {
  Json branches = Json::array();
  for (const auto& b : o.branches)
    branches.push_back({{"x1", b.x1},
                        {"x2", b.x2},
                        {"x2_other", b.x2_other},
                        {"value", b.value},
                        {"offset", b.index},
                        {"iterations", b.iterations}});
  return {{"branches", branches}, {"near_singular", o.near_singular}};
}

}  // namespace slicelab
