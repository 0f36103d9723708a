#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>

#include "corpusmap/serve.hpp"
#include "support/temp_dir.hpp"

using corpusmap::testing::read_file;
using corpusmap::testing::TempDir;

namespace {

const std::filesystem::path kFixtures = CORPUSMAP_FIXTURES;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result cli(const std::string& args) {
  TempDir capture;
  const auto out = capture.path() / "out";
  const auto err = capture.path() / "err";
  const std::string command = std::string("'") + CORPUSMAP_CLI + "' " + args +
                              " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(command.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out);
  r.err = read_file(err);
  return r;
}

std::string e2e_config(const TempDir& dir, const std::string& extra = "") {
  const auto e2e = kFixtures / "e2e";
  return dir
      .write("config.json",
             "{\"manifest\": \"" + (e2e / "manifest.json").string() +
                 "\", \"ner\": {\"mode\": \"conll\", \"conll_dir\": \"" +
                 (e2e / "conll").string() + "\"}, \"temporal\": {\"boundaries\": [2008]}" +
                 extra + "}")
      .string();
}

}  // namespace

TEST_CASE("version and help") {
  const auto v = cli("--version");
  CHECK(v.code == 0);
  CHECK(v.out == "corpusmap 0.1.0\n");
  const auto h = cli("--help");
  CHECK(h.code == 0);
  CHECK(h.out.find("run") != std::string::npos);
  CHECK(h.out.find("serve") != std::string::npos);
  CHECK(cli("run --help").code == 0);
}

TEST_CASE("usage errors exit 1") {
  CHECK(cli("").code == 1);
  CHECK(cli("run").code == 1);
  CHECK(cli("frobnicate").code == 1);
  CHECK(cli("run --config x.json --bogus").code == 1);
  CHECK(cli("run --config x.json --workers 0").code == 1);
  CHECK(cli("serve --dir . --port 0").code == 1);
  CHECK(cli("serve --dir . --port 70000").code == 1);
  CHECK(cli("serve --dir .").code == 1);
}

TEST_CASE("config errors exit 3") {
  TempDir dir;
  CHECK(cli("run --config '" + (dir.path() / "missing.json").string() + "'").code == 3);
  const auto bad = dir.write("bad.json",
                             R"({"manifest": "m.json", "ner": {"mode": "heuristic"},
                                 "normalize": {"threshold": 0}})");
  const auto r = cli("run --config '" + bad.string() + "'");
  CHECK(r.code == 3);
  CHECK(r.err.find("normalize.threshold") != std::string::npos);
  const auto unknown = dir.write("unknown.json",
                                 R"({"manifest": "m.json", "ner": {"mode": "heuristic"}, "colour": 1})");
  CHECK(cli("run --config '" + unknown.string() + "'").code == 3);
}

TEST_CASE("input errors exit 2") {
  TempDir dir;
  const auto cfg = dir.write("config.json",
                             R"({"manifest": "missing.json", "ner": {"mode": "heuristic"}})");
  const auto r = cli("run --config '" + cfg.string() + "'");
  CHECK(r.code == 2);
  CHECK(r.err.find("corpus: ") != std::string::npos);
  CHECK(cli("serve --dir '" + (dir.path() / "nope").string() + "' --port 8080").code == 2);
}

TEST_CASE("busy port exits 2") {
  TempDir bundle;
  corpusmap::BundleServer holder(bundle.path());
  const int port = holder.bind("127.0.0.1", 0);
  const auto r = cli("serve --dir '" + bundle.path().string() + "' --port " +
                     std::to_string(port));
  CHECK(r.code == 2);
  CHECK(r.err.find("port") != std::string::npos);
}

TEST_CASE("successful run writes the bundle and reports counts") {
  TempDir dir;
  const auto cfg = e2e_config(dir);
  const auto r = cli("run --config '" + cfg + "' --workers 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("documents 5") != std::string::npos);
  CHECK(r.err.find("warning: ") != std::string::npos);
  for (const char* name :
       {"graph.gexf", "graph.json", "sankey.json", "edges.csv", "report.json"}) {
    CHECK(std::filesystem::exists(dir.path() / "out" / name));
  }
}
