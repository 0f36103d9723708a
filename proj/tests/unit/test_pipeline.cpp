#include <doctest.h>

#include <json.hpp>

#include "corpusmap/error.hpp"
#include "corpusmap/pipeline.hpp"
#include "corpusmap/writers.hpp"
#include "support/temp_dir.hpp"

using namespace corpusmap;
using corpusmap::testing::read_file;
using corpusmap::testing::TempDir;

namespace {

const std::filesystem::path kFixtures = CORPUSMAP_FIXTURES;

PipelineConfig fixture_config(const std::string& name,
                              const std::filesystem::path& out) {
  PipelineConfig cfg = load_config(kFixtures / name / "config.json");
  cfg.output_dir = out;
  return cfg;
}

bool mentions(const std::vector<std::string>& warnings, const std::string& needle) {
  for (const auto& w : warnings) {
    if (w.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::map<std::string, std::string> snapshot(const std::filesystem::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name != kReportFile) files[name] = read_file(entry.path());
  }
  return files;
}

}  // namespace

TEST_CASE("five-document fixture reproduces its expected counts") {
  TempDir out;
  const auto report = run_pipeline(fixture_config("e2e", out.path()));
  CHECK(counts_json(report.counts) == read_file(kFixtures / "e2e/expected_counts.json"));
  CHECK(report.artifacts == std::vector<std::string>{"edges.csv", "graph.gexf",
                                                     "graph.json", "sankey.json"});
  for (const auto& name : report.artifacts) {
    CHECK(std::filesystem::exists(out.path() / name));
  }
  CHECK(mentions(report.warnings, "I- tag"));
  CHECK(mentions(report.warnings, "undated"));

  const auto saved = nlohmann::json::parse(read_file(out.path() / kReportFile));
  CHECK(saved.at("counts") == nlohmann::json::parse(counts_json(report.counts)));
  CHECK(saved.at("warnings").size() == report.warnings.size());
  CHECK(saved.at("timings_ms").contains("graph"));

  const auto graph = parse_graph_json(read_file(out.path() / "graph.json"));
  CHECK(graph.nodes.size() == report.counts.nodes);
  CHECK(graph.edges.size() == report.counts.edges);
  CHECK(report.counts.edges <= report.counts.nodes * (report.counts.nodes - 1) / 2);
  const auto sankey = parse_sankey_json(read_file(out.path() / "sankey.json"));
  CHECK(sankey.links.size() == report.counts.links);
}

TEST_CASE("reruns and worker counts give identical bytes") {
  TempDir a, b, c;
  auto cfg = fixture_config("e2e", a.path());
  run_pipeline(cfg);
  const auto first = snapshot(a.path());
  run_pipeline(cfg);
  CHECK(snapshot(a.path()) == first);
  cfg.output_dir = b.path();
  cfg.workers = 4;
  run_pipeline(cfg);
  CHECK(snapshot(b.path()) == first);
  cfg.output_dir = c.path();
  cfg.workers = 16;
  run_pipeline(cfg);
  CHECK(snapshot(c.path()) == first);
}

TEST_CASE("drift fixture yields the single expected flow") {
  TempDir out;
  const auto report = run_pipeline(fixture_config("drift", out.path()));
  CHECK(counts_json(report.counts) == read_file(kFixtures / "drift/expected_counts.json"));
  const auto sankey = nlohmann::json::parse(read_file(out.path() / "sankey.json"));
  CHECK(sankey.at("links") ==
        nlohmann::json::parse(read_file(kFixtures / "drift/expected_links.json")));
}

TEST_CASE("empty manifest writes only the report") {
  TempDir dir;
  dir.write("manifest.json", "[]");
  PipelineConfig cfg;
  cfg.manifest = dir.path() / "manifest.json";
  cfg.output_dir = dir.path() / "out";
  const auto report = run_pipeline(cfg);
  CHECK(report.counts == RunCounts{});
  CHECK(report.artifacts.empty());
  CHECK(snapshot(cfg.output_dir).empty());
  CHECK(std::filesystem::exists(cfg.output_dir / kReportFile));
}

TEST_CASE("without boundaries the flow diagram is skipped") {
  TempDir out;
  auto cfg = fixture_config("e2e", out.path());
  cfg.boundaries.clear();
  const auto report = run_pipeline(cfg);
  CHECK_FALSE(std::filesystem::exists(out.path() / "sankey.json"));
  CHECK(std::filesystem::exists(out.path() / "graph.json"));
  CHECK(mentions(report.warnings, "temporal stage skipped"));
  CHECK(report.counts.links == 0);
  CHECK(report.counts.associations == 0);
}

TEST_CASE("a single period skips the flow diagram with a warning") {
  TempDir out;
  auto cfg = fixture_config("e2e", out.path());
  cfg.boundaries = {1990};
  const auto report = run_pipeline(cfg);
  CHECK_FALSE(std::filesystem::exists(out.path() / "sankey.json"));
  CHECK(mentions(report.warnings, "fewer than two periods"));
}

TEST_CASE("stale artifacts of other formats are removed") {
  TempDir out;
  out.write("graph.json", "stale");
  out.write("notes.txt", "keep me");
  auto cfg = fixture_config("e2e", out.path());
  cfg.formats = {OutputFormat::kGexf};
  run_pipeline(cfg);
  CHECK_FALSE(std::filesystem::exists(out.path() / "graph.json"));
  CHECK(std::filesystem::exists(out.path() / "graph.gexf"));
  CHECK(read_file(out.path() / "notes.txt") == "keep me");
}

TEST_CASE("stage errors are tagged and leave no partial output") {
  SUBCASE("missing annotation file") {
    TempDir out;
    auto cfg = fixture_config("e2e", out.path());
    TempDir conll;
    cfg.conll_dir = conll.path();
    try {
      run_pipeline(cfg);
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kInput);
      CHECK(std::string(e.what()).rfind("entities: ", 0) == 0);
    }
    CHECK(std::filesystem::is_empty(out.path()));
  }
  SUBCASE("failure while writing removes what this run wrote") {
    TempDir out;
    std::filesystem::create_directories(out.path() / "sankey.json");
    try {
      run_pipeline(fixture_config("e2e", out.path()));
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).rfind("write: ", 0) == 0);
    }
    for (const char* name : {"edges.csv", "graph.gexf", "graph.json", "report.json"}) {
      CHECK_FALSE(std::filesystem::exists(out.path() / name));
    }
  }
  SUBCASE("bad manifest") {
    TempDir dir;
    dir.write("manifest.json", "[{\"doc_id\": 1}]");
    PipelineConfig cfg;
    cfg.manifest = dir.path() / "manifest.json";
    cfg.output_dir = dir.path() / "out";
    try {
      run_pipeline(cfg);
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).rfind("corpus: ", 0) == 0);
    }
    CHECK_FALSE(std::filesystem::exists(cfg.output_dir));
  }
}

TEST_CASE("empty documents are excluded with a warning") {
  TempDir dir;
  dir.write("a.txt", "We saw Alice Smith with Bob Jones.");
  dir.write("b.txt", " \n ");
  dir.write("manifest.json",
            R"([{"doc_id":"a","path":"a.txt","year":2001},{"doc_id":"b","path":"b.txt"}])");
  PipelineConfig cfg;
  cfg.manifest = dir.path() / "manifest.json";
  cfg.output_dir = dir.path() / "out";
  const auto report = run_pipeline(cfg);
  CHECK(report.counts.documents == 1);
  CHECK(report.counts.edges == 1);
  CHECK(mentions(report.warnings, "empty document"));
}
