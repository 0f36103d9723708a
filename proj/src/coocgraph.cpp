#include "corpusmap/coocgraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "corpusmap/error.hpp"
#include "corpusmap/parallel.hpp"
#include "corpusmap/utf8.hpp"

namespace corpusmap {
namespace {

bool permitted(const TagSet& tags, const TagSet& types) {
  return std::any_of(tags.begin(), tags.end(),
                     [&](EntityTag t) { return types.count(t) > 0; });
}

// Shortest member surface (ties: lexicographically smallest), as tokens.
std::vector<std::string> alias_tokens(const EntityCluster& cluster) {
  const std::string* best = nullptr;
  std::size_t best_len = 0;
  for (const auto& [surface, count] : cluster.members) {
    const std::size_t len = utf8::length(surface);
    if (best == nullptr || len < best_len) {
      best = &surface;
      best_len = len;
    }
  }
  return best ? split_tokens(*best) : std::vector<std::string>{};
}

bool contains_run(const std::vector<Token>& tokens,
                  const std::vector<std::string>& run) {
  if (run.empty() || run.size() > tokens.size()) return false;
  for (std::size_t i = 0; i + run.size() <= tokens.size(); ++i) {
    bool ok = true;
    for (std::size_t k = 0; k < run.size() && ok; ++k) {
      ok = tokens[i + k].surface == run[k];
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::size_t CoocGraph::weight(int a, int b) const {
  if (a > b) std::swap(a, b);
  const auto it = std::lower_bound(
      edges.begin(), edges.end(), std::make_pair(a, b),
      [](const GraphEdge& e, const std::pair<int, int>& key) {
        return std::make_pair(e.source, e.target) < key;
      });
  if (it != edges.end() && it->source == a && it->target == b) {
    return it->weight;
  }
  return 0;
}

const GraphNode* CoocGraph::node(int id) const {
  const auto it =
      std::lower_bound(nodes.begin(), nodes.end(), id,
                       [](const GraphNode& n, int key) { return n.id < key; });
  return it != nodes.end() && it->id == id ? &*it : nullptr;
}

CoocGraph build_graph(std::span<const EntityCluster> clusters,
                      std::span<const EntityMention> mentions,
                      const Corpus& corpus, const GraphOptions& options) {
  const ClusterIndex index(clusters);
  std::vector<bool> cluster_permitted(clusters.size(), false);
  CoocGraph graph;
  for (const auto& c : clusters) {
    if (c.cluster_id < 0 ||
        static_cast<std::size_t>(c.cluster_id) >= clusters.size()) {
      throw internal_error("cluster ids must be dense");
    }
    if (!permitted(c.tags, options.types)) continue;
    cluster_permitted[static_cast<std::size_t>(c.cluster_id)] = true;
    graph.nodes.push_back({c.cluster_id, c.canonical, c.tags, c.mention_count});
  }
  std::sort(graph.nodes.begin(), graph.nodes.end(),
            [](const GraphNode& a, const GraphNode& b) { return a.id < b.id; });

  std::unordered_map<std::string, std::size_t> doc_slot;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    doc_slot.emplace(corpus.documents[d].doc.doc_id, d);
  }
  // literal[d][s]: clusters annotated in sentence s of document d.
  std::vector<std::vector<std::set<int>>> literal(corpus.documents.size());
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    literal[d].resize(corpus.documents[d].sentences.size());
  }
  for (const auto& m : mentions) {
    const int id = index.at(m);
    const auto it = doc_slot.find(m.doc_id);
    if (it == doc_slot.end() || m.sentence >= literal[it->second].size()) {
      throw internal_error("mention \"" + m.surface +
                           "\" references an unknown sentence");
    }
    if (options.types.count(m.tag) == 0) continue;
    literal[it->second][m.sentence].insert(id);
  }

  std::map<int, std::vector<std::string>> aliases;
  if (options.coref == CorefMode::kAlias) {
    for (const auto& c : clusters) {
      if (cluster_permitted[static_cast<std::size_t>(c.cluster_id)]) {
        aliases.emplace(c.cluster_id, alias_tokens(c));
      }
    }
  }

  using PairCounts = std::map<std::pair<int, int>, std::size_t>;
  std::vector<PairCounts> per_doc(corpus.documents.size());
  parallel_for(corpus.documents.size(), options.workers, [&](std::size_t d) {
    const auto& doc = corpus.documents[d];
    std::set<int> seen;
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      std::set<int> present = literal[d][s];
      if (options.coref == CorefMode::kAlias) {
        for (int id : seen) {
          if (!present.count(id) && contains_run(doc.tokens[s], aliases.at(id))) {
            present.insert(id);
          }
        }
        seen.insert(literal[d][s].begin(), literal[d][s].end());
      }
      for (auto a = present.begin(); a != present.end(); ++a) {
        for (auto b = std::next(a); b != present.end(); ++b) {
          ++per_doc[d][{*a, *b}];
        }
      }
    }
  });

  PairCounts total;
  for (const auto& counts : per_doc) {
    for (const auto& [pair, w] : counts) total[pair] += w;
  }
  for (const auto& [pair, w] : total) {
    graph.edges.push_back({pair.first, pair.second, w});
  }
  return graph;
}

CoocGraph filter_graph(const CoocGraph& graph, const GraphFilter& filter) {
  CoocGraph out;
  std::set<int> kept;
  for (const auto& n : graph.nodes) {
    if (n.freq >= filter.min_node_freq) kept.insert(n.id);
  }
  std::set<int> linked;
  for (const auto& e : graph.edges) {
    if (e.weight < filter.min_edge_weight || !kept.count(e.source) ||
        !kept.count(e.target)) {
      continue;
    }
    out.edges.push_back(e);
    linked.insert(e.source);
    linked.insert(e.target);
  }
  for (const auto& n : graph.nodes) {
    if (!kept.count(n.id)) continue;
    if (filter.drop_isolated && !linked.count(n.id)) continue;
    out.nodes.push_back(n);
  }
  return out;
}

GraphStats graph_stats(const CoocGraph& graph) {
  GraphStats stats;
  stats.node_count = graph.nodes.size();
  stats.edge_count = graph.edges.size();

  std::map<int, std::size_t> slot;
  for (const auto& n : graph.nodes) slot.emplace(n.id, slot.size());
  std::vector<std::size_t> degree(slot.size(), 0);
  std::vector<std::size_t> parent(slot.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : graph.edges) {
    stats.total_weight += e.weight;
    const std::size_t a = slot.at(e.source);
    const std::size_t b = slot.at(e.target);
    ++degree[a];
    ++degree[b];
    parent[find(a)] = find(b);
  }
  for (std::size_t i = 0; i < degree.size(); ++i) {
    if (degree[i] == 0) ++stats.isolated_count;
    stats.max_degree = std::max(stats.max_degree, degree[i]);
    if (find(i) == i) ++stats.component_count;
  }
  return stats;
}

}  // namespace corpusmap
