#include "slicelab/app.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "slicelab/catalog.hpp"
#include "slicelab/svg.hpp"

namespace slicelab {

AppConfig AppConfig::from_env() {
  AppConfig c;
  c.preset_dir = SLICELAB_PRESET_DIR;
  if (const char* g = std::getenv("SLICELAB_GRID_DEFAULT")) {
    const int n = std::atoi(g);
    if (n >= 16) c.default_grid = n;
  }
  return c;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

Json envelope(const Json& request, const Json& payload) {
  return {{"engine", kEngineVersion}, {"digest", sha256_hex(request.dump())}, {"payload", payload}};
}

std::vector<Json> load_presets(const AppConfig& config) {
  namespace fs = std::filesystem;
  std::vector<Json> out;
  std::error_code ec;
  if (!fs::is_directory(config.preset_dir, ec)) return out;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(config.preset_dir, ec))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream in(f);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;
    if (!j.contains("name")) j["name"] = f.stem().string();
    out.push_back(std::move(j));
  }
  return out;
}

namespace {

int grid_size(const Json& req, const AppConfig& config) {
  if (!req.contains("grid")) return config.default_grid;
  if (!req["grid"].is_number_integer()) throw InvalidInput("'grid' must be an integer");
  const int n = req["grid"].get<int>();
  if (n < 16 || n > 4096) throw InvalidInput("'grid' must lie in [16, 4096]");
  return n;
}

double number(const Json& req, const char* key) {
  if (!req.contains(key) || !req[key].is_number())
    throw InvalidInput(std::string("missing numeric field '") + key + "'");
  return req[key].get<double>();
}

GeneratingFamily resolve_family(const Json& req, const AppConfig& config) {
  if (req.contains("family")) return family_from_json(req["family"]);
  if (req.contains("preset")) {
    if (!req["preset"].is_string()) throw InvalidInput("'preset' must be a string");
    const std::string name = req["preset"];
    for (const Json& p : load_presets(config))
      if (p.value("name", "") == name) return family_from_json(p);
    throw InvalidInput("unknown preset '" + name + "'");
  }
  throw InvalidInput("request needs 'family' or 'preset'");
}

struct DiagramInput {
  SliceDiagram diagram;
  std::string label;
};

// Catalog text, diagram object, or null / "empty" for the empty slice.
DiagramInput resolve_diagram(const Json& v) {
  if (v.is_null() || (v.is_string() && (v == "empty" || v == ""))) return {{}, "empty"};
  if (v.is_string()) {
    const CatalogSpec spec = parse_catalog(v.get<std::string>());
    return {realize_catalog(spec), to_string(spec)};
  }
  if (v.is_object()) return {diagram_from_json(v), "diagram"};
  throw InvalidInput("diagram must be catalog text or a diagram object");
}

DiagramInput analyze_input(const Json& req) {
  if (req.contains("catalog")) {
    if (!req["catalog"].is_string()) throw InvalidInput("'catalog' must be a string");
    return resolve_diagram(req["catalog"]);
  }
  if (req.contains("diagram")) return resolve_diagram(req["diagram"]);
  throw InvalidInput("request needs 'catalog' or 'diagram'");
}

}  // namespace

Json api_analyze(const Json& req, const AppConfig&) {
  if (!req.is_object()) throw InvalidInput("request must be a JSON object");
  const DiagramInput in = analyze_input(req);
  AnalysisOptions opt;
  if (req.contains("assume_negative_slice"))
    opt.assume_negative_slice = req["assume_negative_slice"].get<bool>();
  const Analysis a = analyze(in.diagram, opt);
  if (a.verdict.kind == SliceVerdict::Kind::NonGeneric)
    throw NonGenericError(a.verdict.message, a.verdict.location.value_or(Vec2{}));
  Json out = to_json(a);
  out["input"] = in.label;
  out["diagram"] = diagram_details(in.diagram);
  out["key"] = to_json(equivalence_key(in.diagram));
  out["chain_bound"] = to_json(strict_chain_bound(in.diagram));
  if (req.value("svg", false)) out["svg"] = render_svg(in.diagram);
  return out;
}

Json api_slice(const Json& req, const AppConfig& config) {
  if (!req.is_object()) throw InvalidInput("request must be a JSON object");
  const GeneratingFamily f = resolve_family(req, config);
  const double level = number(req, "level");
  const SliceResult s = extract_slice(f, level, Grid::around(f, grid_size(req, config)));
  Json out = to_json(s);
  const Analysis a = analyze(s.diagram);
  out["report"] = to_json(a.report);
  out["verdict"] = to_json(a.verdict);
  if (req.value("svg", false)) out["svg"] = render_svg(s.diagram);
  return out;
}

Json api_sweep(const Json& req, const AppConfig& config) {
  if (!req.is_object()) throw InvalidInput("request must be a JSON object");
  const GeneratingFamily f = resolve_family(req, config);
  const double lo = number(req, "from"), hi = number(req, "to");
  if (!req.contains("steps") || !req["steps"].is_number_integer())
    throw InvalidInput("missing integer field 'steps'");
  const int steps = req["steps"].get<int>();
  if (steps > 2000) throw InvalidInput("'steps' must be at most 2000");
  return to_json(sweep(f, lo, hi, steps, Grid::around(f, grid_size(req, config))));
}

Json api_relation(const Json& req, const AppConfig&) {
  if (!req.is_object()) throw InvalidInput("request must be a JSON object");
  if (!req.contains("bottom") || !req.contains("top"))
    throw InvalidInput("request needs 'bottom' and 'top'");
  const DiagramInput bottom = resolve_diagram(req["bottom"]);
  const DiagramInput top = resolve_diagram(req["top"]);
  const bool strict = req.value("strict", false);
  const RelationVerdict v = check_relation({bottom.diagram, top.diagram, strict});
  if (v.kind == RelationVerdict::Kind::NonGeneric) throw NonGenericError(v.message, {});
  Json out = to_json(v);
  out["bottom_input"] = bottom.label;
  out["top_input"] = top.label;
  out["query_strict"] = strict;
  return out;
}

Json api_presets(const AppConfig& config) {
  Json list = Json::array();
  for (const Json& p : load_presets(config)) list.push_back(p);
  return {{"presets", list}};
}

Json api_oracle(const Json& req, const AppConfig& config) {
  if (!req.is_object()) throw InvalidInput("request must be a JSON object");
  const GeneratingFamily f = resolve_family(req, config);
  const double level = number(req, "level");
  const SliceResult s = extract_slice(f, level, Grid::around(f, grid_size(req, config)));
  const MorseTable table = morse_table(s.diagram);
  Json rows = Json::array();
  for (std::size_t i = 0; i < s.diagram.crossings().size(); ++i) {
    Json row = to_json(hessian_oracle(f, s, i));
    row["crossing"] = i;
    Json analyzer = Json::array();
    for (const auto& r : table.rows)
      if (r.crossing == i)
        analyzer.push_back({{"branch", r.branch},
                            {"location", to_string(r.location)},
                            {"offset", r.offset ? Json(*r.offset) : Json("symbolic")},
                            {"value", r.value ? Json(*r.value) : Json("symbolic")}});
    row["analyzer"] = analyzer;
    rows.push_back(row);
  }
  return {{"level", level}, {"classification", to_json(s.classification)}, {"crossings", rows}};
}

// ---------------------------------------------------------------- service

namespace {

Json error_body(const Json& request, const std::string& code, const std::string& message,
                const Json& location) {
  return {{"engine", kEngineVersion},
          {"digest", sha256_hex(request.dump())},
          {"error", {{"code", code}, {"message", message}, {"location", location}}}};
}

HttpResponse json_response(int status, const Json& j) { return {status, "application/json", j.dump()}; }

std::string ndjson_sweep(const Json& request, const Json& payload) {
  std::string out;
  for (const Json& l : payload["levels"])
    out += Json{{"level", l["level"]}, {"summary", l}}.dump() + "\n";
  out += envelope(request, {{"events", payload["events"]}}).dump() + "\n";
  return out;
}

}  // namespace

HttpResponse handle_request(const std::string& method, const std::string& path,
                            const std::string& body, const AppConfig& config) {
  if (method == "GET" && path == "/healthz") return {200, "text/plain", "ok"};
  if (method == "GET" && path == "/api/presets")
    return json_response(200, envelope(Json::object(), api_presets(config)));

  using Handler = Json (*)(const Json&, const AppConfig&);
  Handler handler = nullptr;
  if (path == "/api/analyze") handler = api_analyze;
  if (path == "/api/slice") handler = api_slice;
  if (path == "/api/sweep") handler = api_sweep;
  if (path == "/api/relation") handler = api_relation;
  if (path == "/api/oracle") handler = api_oracle;
  if (path == "/api/presets")
    return json_response(405, error_body(nullptr, "method-not-allowed", "use GET for " + path, nullptr));
  if (!handler) return json_response(404, error_body(nullptr, "not-found", "unknown route " + path, nullptr));
  if (method != "POST")
    return json_response(405, error_body(nullptr, "method-not-allowed", "use POST for " + path, nullptr));

  const Json request = Json::parse(body, nullptr, false);
  if (request.is_discarded())
    return json_response(400, error_body(body, "malformed-json", "request body is not valid JSON", nullptr));
  try {
    const Json payload = handler(request, config);
    if (handler == api_sweep && request.value("stream", false))
      return {200, "application/x-ndjson", ndjson_sweep(request, payload)};
    return json_response(200, envelope(request, payload));
  } catch (const CatalogSyntaxError& e) {
    return json_response(400, error_body(request, "syntax", e.what(), e.position));
  } catch (const CatalogConstraintError& e) {
    return json_response(422, error_body(request, "constraint", e.what(), nullptr));
  } catch (const OracleError& e) {
    return json_response(422, error_body(request, "oracle", e.what(), nullptr));
  } catch (const InvalidInput& e) {
    return json_response(400, error_body(request, "invalid-input", e.what(), nullptr));
  } catch (const NonGenericError& e) {
    return json_response(422, error_body(request, "non-generic", e.what(),
                                         Json::array({e.location.x, e.location.y})));
  } catch (const nlohmann::json::exception& e) {
    return json_response(400, error_body(request, "invalid-input", e.what(), nullptr));
  }
}

}  // namespace slicelab
