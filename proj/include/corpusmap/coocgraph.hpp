#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "corpusmap/corpus.hpp"
#include "corpusmap/entities.hpp"
#include "corpusmap/normalize.hpp"

namespace corpusmap {

struct GraphNode {
  int id = 0;  // cluster id
  std::string label;
  TagSet tags;
  std::size_t freq = 0;

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

// Undirected; stored once with source < target.
struct GraphEdge {
  int source = 0;
  int target = 0;
  std::size_t weight = 0;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct CoocGraph {
  std::vector<GraphNode> nodes;  // ascending id
  std::vector<GraphEdge> edges;  // ascending (source, target)

  // 0 when the pair is not linked. Argument order does not matter.
  std::size_t weight(int a, int b) const;
  const GraphNode* node(int id) const;

  friend bool operator==(const CoocGraph&, const CoocGraph&) = default;
};

enum class CorefMode {
  kNone,   // only annotated mentions count
  kAlias,  // a cluster's shortest alias also counts in later sentences
};

struct GraphOptions {
  TagSet types = {EntityTag::kPerson, EntityTag::kOrganization};
  CorefMode coref = CorefMode::kNone;
  unsigned workers = 1;
};

// Each sentence adds 1 to every unordered pair of distinct permitted
// clusters it mentions, however many times each is mentioned.
CoocGraph build_graph(std::span<const EntityCluster> clusters,
                      std::span<const EntityMention> mentions,
                      const Corpus& corpus, const GraphOptions& options = {});

struct GraphFilter {
  std::size_t min_node_freq = 0;
  std::size_t min_edge_weight = 0;
  bool drop_isolated = false;
};

CoocGraph filter_graph(const CoocGraph& graph, const GraphFilter& filter);

struct GraphStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t isolated_count = 0;
  std::size_t component_count = 0;
  std::size_t max_degree = 0;
  std::size_t total_weight = 0;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

GraphStats graph_stats(const CoocGraph& graph);

}  // namespace corpusmap
