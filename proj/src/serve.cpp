#include "corpusmap/serve.hpp"

#include <sys/socket.h>

#include <httplib.h>

#include "corpusmap/error.hpp"

namespace corpusmap {

struct BundleServer::Impl {
  httplib::Server server;
};

BundleServer::BundleServer(const std::filesystem::path& dir)
    : impl_(std::make_unique<Impl>()) {
  if (!std::filesystem::is_directory(dir)) {
    throw input_error("bundle directory not found: " + dir.string());
  }
  auto& server = impl_->server;
  // SO_REUSEPORT (httplib's default) would let a second server share a busy
  // port silently.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  server.set_file_extension_and_mimetype_mapping("gexf", "application/gexf+xml");
  server.set_file_extension_and_mimetype_mapping("json", "application/json");
  server.set_file_extension_and_mimetype_mapping("csv", "text/csv");
  if (!server.set_mount_point("/", dir.string())) {
    throw input_error("cannot serve directory: " + dir.string());
  }
}

BundleServer::~BundleServer() { stop(); }

int BundleServer::bind(const std::string& host, int port) {
  auto& server = impl_->server;
  if (port == 0) {
    const int bound = server.bind_to_any_port(host);
    if (bound < 0) throw input_error("cannot bind " + host);
    return bound;
  }
  if (!server.bind_to_port(host, port)) {
    throw input_error("cannot bind " + host + ":" + std::to_string(port) +
                      " (port busy?)");
  }
  return port;
}

void BundleServer::listen() { impl_->server.listen_after_bind(); }

void BundleServer::stop() {
  if (impl_) impl_->server.stop();
}

void BundleServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void serve_bundle(const std::filesystem::path& dir, int port,
                  const std::string& host) {
  BundleServer server(dir);
  server.bind(host, port);
  server.listen();
}

}  // namespace corpusmap
