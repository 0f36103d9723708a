#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "corpusmap/config.hpp"

namespace corpusmap {

struct RunCounts {
  std::size_t documents = 0;
  std::size_t sentences = 0;
  std::size_t mentions = 0;
  std::size_t clusters = 0;
  std::size_t nodes = 0;  // exported (filtered) graph
  std::size_t edges = 0;
  std::size_t associations = 0;
  std::size_t links = 0;

  friend bool operator==(const RunCounts&, const RunCounts&) = default;
};

struct RunReport {
  RunCounts counts;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, double>> timings_ms;  // stage order
  std::vector<std::string> artifacts;                      // file names
};

inline constexpr const char* kReportFile = "report.json";

// Sorted keys, two-space indentation, trailing newline.
std::string counts_json(const RunCounts& counts);
std::string report_json(const RunReport& report);

// Every artifact the configuration asks for, keyed by file name, without
// touching the filesystem beyond reading inputs. Fills counts and warnings.
std::map<std::string, std::string> build_artifacts(const PipelineConfig& cfg,
                                                   RunReport& report);

// corpus -> entities -> graph -> temporal -> writers. Artifacts and
// report.json land in cfg.output_dir. Any stage error is rethrown with the
// stage name prefixed and no artifacts from this run are left behind.
// Concurrent runs on one output directory are not supported.
RunReport run_pipeline(const PipelineConfig& cfg);

}  // namespace corpusmap
