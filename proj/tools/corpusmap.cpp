// corpusmap: corpus -> entity co-occurrence maps and temporal flows.
//
//   corpusmap run --config <path> [--workers N]
//   corpusmap serve --dir <path> --port <n> [--host H]
//
// Exit codes: 0 success, 1 usage error, 2 input error, 3 config error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "corpusmap/config.hpp"
#include "corpusmap/error.hpp"
#include "corpusmap/pipeline.hpp"
#include "corpusmap/serve.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;

constexpr const char* kVersion = "0.1.0";

int exit_code(const corpusmap::Error& e) {
  return e.kind() == corpusmap::ErrorKind::kConfig ? kExitConfig : kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build entity co-occurrence maps and temporal flows from a "
               "dated text corpus",
               "corpusmap"};
  app.set_version_flag("--version", std::string("corpusmap ") + kVersion);
  app.require_subcommand(1);

  std::string config_path;
  unsigned workers = 0;
  auto* run = app.add_subcommand("run", "Run the pipeline and export artifacts");
  run->add_option("--config", config_path, "Pipeline configuration (JSON)")
      ->required();
  run->add_option("--workers", workers,
                  "Worker threads (overrides the config file)")
      ->check(CLI::PositiveNumber);

  std::string dir;
  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "Serve an exported bundle over HTTP");
  serve->add_option("--dir", dir, "Bundle directory")->required();
  serve->add_option("--port", port, "TCP port")
      ->required()
      ->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "Listen address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) {
      auto cfg = corpusmap::load_config(config_path);
      if (workers > 0) cfg.workers = workers;
      const auto report = corpusmap::run_pipeline(cfg);
      const auto& c = report.counts;
      std::cout << "documents " << c.documents << ", sentences " << c.sentences
                << ", mentions " << c.mentions << ", clusters " << c.clusters
                << ", nodes " << c.nodes << ", edges " << c.edges
                << ", associations " << c.associations << ", links " << c.links
                << "\n";
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "wrote " << report.artifacts.size() << " artifact(s) to "
                << cfg.output_dir.string() << "\n";
      return 0;
    }
    if (*serve) {
      corpusmap::BundleServer server(dir);
      server.bind(host, port);
      std::cout << "serving " << dir << " on http://" << host << ":" << port
                << "/\n"
                << std::flush;
      server.listen();
      return 0;
    }
  } catch (const corpusmap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
