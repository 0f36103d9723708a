#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "corpusmap/coocgraph.hpp"
#include "corpusmap/corpus.hpp"
#include "corpusmap/normalize.hpp"

namespace corpusmap {

enum class NerMode { kConll, kHeuristic };

enum class OutputFormat { kGexf, kGraphJson, kSankeyJson, kEdgesCsv };

std::string_view format_name(OutputFormat format);
// File written for the format inside output.dir, e.g. "graph.gexf".
std::string_view artifact_file(OutputFormat format);

struct PipelineConfig {
  std::filesystem::path manifest;
  unsigned workers = 1;
  std::vector<std::string> abbreviations =
      SegmentOptions::default_abbreviations();

  NerMode ner_mode = NerMode::kHeuristic;
  std::filesystem::path conll_dir;
  std::optional<std::filesystem::path> gazetteer;

  double threshold = 0.8;
  ClusterPolicy policy = ClusterPolicy::kPerType;

  TagSet types = {EntityTag::kPerson, EntityTag::kOrganization};
  CorefMode coref = CorefMode::kNone;
  GraphFilter filter;

  std::vector<int> boundaries;  // empty: temporal stage skipped
  std::size_t top_terms = 10;
  std::size_t candidate_terms = 50;
  std::optional<std::filesystem::path> term_list;
  std::optional<std::filesystem::path> stoplist;

  std::filesystem::path output_dir;
  std::set<OutputFormat> formats = {OutputFormat::kGexf,
                                    OutputFormat::kGraphJson,
                                    OutputFormat::kSankeyJson,
                                    OutputFormat::kEdgesCsv};
};

// Relative paths resolve against `base_dir`. All failures are config errors.
PipelineConfig parse_config(std::string_view json_text,
                            const std::filesystem::path& base_dir);

PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace corpusmap
