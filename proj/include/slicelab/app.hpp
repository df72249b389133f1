#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "slicelab/json_io.hpp"

namespace slicelab {

inline constexpr const char* kEngineVersion = "slicelab 0.1.0";

struct AppConfig {
  std::string preset_dir;
  int default_grid = 256;

  /// Preset directory from the build, grid size from SLICELAB_GRID_DEFAULT.
  static AppConfig from_env();
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

std::string sha256_hex(std::string_view data);

/// {"engine", "digest" of the canonical request, "payload"}.
Json envelope(const Json& request, const Json& payload);

/// Presets found in the configured directory, sorted by name.
std::vector<Json> load_presets(const AppConfig& config);

// Logical operations shared by the CLI and the service. They throw
// InvalidInput, CatalogConstraintError, NonGenericError or OracleError.
Json api_analyze(const Json& request, const AppConfig& config);
Json api_slice(const Json& request, const AppConfig& config);
Json api_sweep(const Json& request, const AppConfig& config);
Json api_relation(const Json& request, const AppConfig& config);
Json api_presets(const AppConfig& config);
Json api_oracle(const Json& request, const AppConfig& config);

/// Stateless request handler behind the HTTP service.
HttpResponse handle_request(const std::string& method, const std::string& path,
                            const std::string& body, const AppConfig& config);

using ServeFn = std::function<int(int port, const std::string& static_dir, const AppConfig&)>;

/// CLI entry point. Exit codes: 0 ok, 2 invalid input, 3 non-generic.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                const ServeFn& serve = {});

}  // namespace slicelab
