#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "corpusmap/coocgraph.hpp"
#include "corpusmap/temporal.hpp"

namespace corpusmap {

// All writers emit UTF-8 with "\n" line endings and are byte-deterministic.

// GEXF 1.2 with node attributes "type" (joined tags) and "freq".
std::string write_gexf(const CoocGraph& graph);

// {"edges":[{"source","target","weight"}],"nodes":[{"freq","id","label","type"}]}
// with sorted keys, two-space indentation.
std::string write_graph_json(const CoocGraph& graph);
CoocGraph parse_graph_json(std::string_view text);

// {"links":[...],"nodes":[...],"periods":[{"id","label"}]}. Period years are
// not part of the format; parsed periods carry the label only.
std::string write_sankey_json(const SankeySpec& spec);
SankeySpec parse_sankey_json(std::string_view text);

struct EdgeRow {
  int source = 0;
  int target = 0;
  std::size_t weight = 0;
  std::string source_label;
  std::string target_label;

  friend bool operator==(const EdgeRow&, const EdgeRow&) = default;
};

// Header "source,target,weight,source_label,target_label"; labels quoted when
// they contain a comma, quote, or line break.
std::string write_edges_csv(const CoocGraph& graph);
std::vector<EdgeRow> parse_edges_csv(std::string_view text);

std::string xml_escape(std::string_view text);
std::string csv_field(std::string_view text);

}  // namespace corpusmap
