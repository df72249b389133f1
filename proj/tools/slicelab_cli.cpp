#include <httplib.h>

#include <iostream>

#include "slicelab/app.hpp"

namespace {

int serve(int port, const std::string& static_dir, const slicelab::AppConfig& config) {
  httplib::Server server;
  auto dispatch = [&config](const httplib::Request& req, httplib::Response& res) {
    const slicelab::HttpResponse r = slicelab::handle_request(req.method, req.path, req.body, config);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server.Get("/healthz", dispatch);
  server.Get(R"(/api/.*)", dispatch);
  server.Post(R"(/api/.*)", dispatch);
  server.Put(R"(/api/.*)", dispatch);
  server.Delete(R"(/api/.*)", dispatch);
  if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
    std::cerr << "static directory not found: " << static_dir << "\n";
    return 2;
  }
  std::cerr << "listening on port " << port << "\n";
  return server.listen("0.0.0.0", port) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return slicelab::run_command(args, std::cout, std::cerr, serve);
}
