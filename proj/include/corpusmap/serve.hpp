#pragma once

#include <filesystem>
#include <memory>
#include <string>

namespace corpusmap {

// Read-only static file server over an exported bundle directory. "/" maps
// to index.html when the bundle ships one.
class BundleServer {
 public:
  explicit BundleServer(const std::filesystem::path& dir);
  ~BundleServer();
  BundleServer(const BundleServer&) = delete;
  BundleServer& operator=(const BundleServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws Error(kInput)
  // when the port is taken.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called from another thread.
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// bind + listen; blocks.
void serve_bundle(const std::filesystem::path& dir, int port,
                  const std::string& host = "127.0.0.1");

}  // namespace corpusmap
