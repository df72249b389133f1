#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "slicelab/app.hpp"
#include "slicelab/catalog.hpp"
#include "slicelab/svg.hpp"

namespace slicelab {

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitNonGeneric = 3;

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw InvalidInput(path + " is not valid JSON");
  return j;
}

bool is_file(const std::string& s) {
  std::error_code ec;
  return std::filesystem::is_regular_file(s, ec);
}

// A diagram argument is a JSON file, "empty", or catalog text.
Json diagram_argument(const std::string& s) {
  if (is_file(s)) return read_json_file(s);
  return s;
}

// A family argument is a JSON file or the name of a shipped preset.
void add_family(Json& req, const std::string& s) {
  if (is_file(s))
    req["family"] = read_json_file(s);
  else
    req["preset"] = s;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

std::string status_text(const Json& s) {
  const std::string kind = s["status"];
  if (kind == "forced-zero") return "0";
  if (kind == "forced-value") return s["value"].dump();
  if (kind == "candidate-set") {
    std::string out = "{";
    for (std::size_t i = 0; i < s["candidates"].size(); ++i)
      out += (i ? "," : "") + s["candidates"][i].dump();
    if (s["wildcard"].get<bool>()) out += s["candidates"].empty() ? "*" : ",*";
    return out + "}";
  }
  return "?";
}

void print_summary(const Json& p, std::ostream& out) {
  out << "input: " << p["input"].get<std::string>() << "\n";
  out << "components: " << p["morse"]["topology"]["components"] << ", crossings: "
      << p["diagram"]["crossings"].size() << "\n";
  for (const Json& row : p["morse"]["rows"])
    out << "  " << row["source"].dump() << " branch " << row["branch"] << "  "
        << row["location"].get<std::string>() << "  offset " << row["offset"].dump() << "  value "
        << row["value"].dump() << "\n";
  for (const Json& c : p["classes"])
    out << c["name"].get<std::string>() << ": c+=" << status_text(c["c+"])
        << " c-=" << status_text(c["c-"]) << " C+=" << status_text(c["C+"])
        << " C-=" << status_text(c["C-"]) << "\n";
  out << "verdict: " << p["verdict"]["result"].get<std::string>();
  if (p["verdict"].contains("class")) out << " (" << p["verdict"]["class"].get<std::string>() << ")";
  out << "\n";
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                const ServeFn& serve) {
  const AppConfig config = AppConfig::from_env();
  CLI::App app{"Slice workbench: diagrams, capacities and numerical slicing"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "Write JSON output to this file instead of stdout");

  std::string input, svg_path;
  bool as_json = false, no_assume = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Capacity analysis of a catalog diagram or diagram JSON");
  analyze_cmd->add_option("input", input, "Catalog text such as \"8+(1)\" or a diagram JSON file")->required();
  analyze_cmd->add_flag("--json", as_json, "Emit the JSON envelope");
  analyze_cmd->add_option("--svg", svg_path, "Also render the diagram to this SVG file");
  analyze_cmd->add_flag("--no-assume-negative", no_assume, "Drop the negative-slice assumption");

  std::string family;
  double level = 0.0, from = 0.0, to = 0.0;
  int grid = config.default_grid, steps = 0;
  bool stream = false;
  auto* slice_cmd = app.add_subcommand("slice", "Slice a generating family at one level");
  slice_cmd->add_option("--family", family, "Family JSON file or preset name")->required();
  slice_cmd->add_option("--level", level, "Level a < 0")->required();
  slice_cmd->add_option("--grid", grid, "Cells per axis");
  slice_cmd->add_option("--svg", svg_path, "Also render the slice to this SVG file");

  auto* sweep_cmd = app.add_subcommand("sweep", "Classify slices over a range of levels");
  sweep_cmd->add_option("--family", family, "Family JSON file or preset name")->required();
  sweep_cmd->add_option("--from", from, "Lowest level")->required();
  sweep_cmd->add_option("--to", to, "Highest level")->required();
  sweep_cmd->add_option("--steps", steps, "Number of sampled levels")->required();
  sweep_cmd->add_option("--grid", grid, "Cells per axis");
  sweep_cmd->add_flag("--stream", stream, "Line-delimited JSON, one line per level");

  std::string bottom, top;
  bool strict = false;
  auto* relation_cmd = app.add_subcommand("relation", "Look for a capacity obstruction between two slices");
  relation_cmd->add_option("--bottom", bottom, "Lower slice: catalog text, diagram JSON file or \"empty\"")->required();
  relation_cmd->add_option("--top", top, "Upper slice: catalog text, diagram JSON file or \"empty\"")->required();
  relation_cmd->add_flag("--strict", strict, "Strict relation");

  auto* oracle_cmd = app.add_subcommand("oracle", "Hessian check of every crossing of a numerical slice");
  oracle_cmd->add_option("--family", family, "Family JSON file or preset name")->required();
  oracle_cmd->add_option("--level", level, "Level a < 0")->required();
  oracle_cmd->add_option("--grid", grid, "Cells per axis");

  int port = 8080;
  std::string static_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--port", port, "TCP port");
  serve_cmd->add_option("--static", static_dir, "Directory of static files to serve at /");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInvalid;
  }

  auto emit = [&](const Json& j) {
    if (out_path.empty())
      out << j.dump(2) << "\n";
    else
      write_file(out_path, j.dump(2) + "\n");
  };
  const bool grid_given = slice_cmd->count("--grid") + sweep_cmd->count("--grid") +
                          oracle_cmd->count("--grid") > 0;

  try {
    if (*analyze_cmd) {
      Json req;
      const Json d = diagram_argument(input);
      if (d.is_string())
        req["catalog"] = d;
      else
        req["diagram"] = d;
      if (no_assume) req["assume_negative_slice"] = false;
      const Json payload = api_analyze(req, config);
      if (!svg_path.empty()) write_file(svg_path, render_svg(diagram_from_json(payload["diagram"])));
      if (as_json || !out_path.empty())
        emit(envelope(req, payload));
      else
        print_summary(payload, out);
      return 0;
    }
    if (*slice_cmd) {
      Json req{{"level", level}};
      add_family(req, family);
      if (grid_given) req["grid"] = grid;
      Json payload = api_slice(req, config);
      if (!svg_path.empty()) write_file(svg_path, render_svg(diagram_from_json(payload["diagram"])));
      emit(envelope(req, payload));
      return 0;
    }
    if (*sweep_cmd) {
      Json req{{"from", from}, {"to", to}, {"steps", steps}};
      add_family(req, family);
      if (grid_given) req["grid"] = grid;
      const Json payload = api_sweep(req, config);
      if (stream) {
        for (const Json& l : payload["levels"]) out << Json{{"level", l["level"]}, {"summary", l}}.dump() << "\n";
        out << envelope(req, {{"events", payload["events"]}}).dump() << "\n";
      } else {
        emit(envelope(req, payload));
      }
      return 0;
    }
    if (*relation_cmd) {
      Json req{{"bottom", diagram_argument(bottom)}, {"top", diagram_argument(top)}, {"strict", strict}};
      emit(envelope(req, api_relation(req, config)));
      return 0;
    }
    if (*oracle_cmd) {
      Json req{{"level", level}};
      add_family(req, family);
      if (grid_given) req["grid"] = grid;
      emit(envelope(req, api_oracle(req, config)));
      return 0;
    }
    if (*serve_cmd) {
      if (!serve) {
        err << "serve is not available in this build\n";
        return kExitInvalid;
      }
      return serve(port, static_dir, config);
    }
  } catch (const CatalogSyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const OracleError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonGeneric;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const NonGenericError& e) {
    err << "non-generic: " << e.what() << " near (" << e.location.x << ", " << e.location.y << ")\n";
    return kExitNonGeneric;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace slicelab
