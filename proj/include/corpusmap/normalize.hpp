#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpusmap/entities.hpp"

namespace corpusmap {

// Longest common subsequence length over Unicode scalar values,
// case-sensitive. Quadratic time, linear memory.
std::size_t lcs_length(std::u32string_view a, std::u32string_view b);
std::size_t lcs_length(std::string_view a, std::string_view b);

// lcs / min(|a|, |b|); 0 when either side is empty.
double similarity(std::u32string_view a, std::u32string_view b);
double similarity(std::string_view a, std::string_view b);

enum class ClusterPolicy { kPerType, kCrossType };

struct EntityCluster {
  int cluster_id = 0;
  std::string canonical;
  TagSet tags;
  std::map<std::string, std::size_t> members;  // surface -> mention count
  std::size_t mention_count = 0;
};

// Most frequent surface; ties go to the longer one, then to the
// lexicographically smallest.
std::string canonical_name(const std::map<std::string, std::size_t>& members);

// Surfaces at most this many characters long only ever cluster with
// themselves.
inline constexpr std::size_t kShortSurfaceLength = 2;

struct ClusterOptions {
  double threshold = 0.8;
  ClusterPolicy policy = ClusterPolicy::kPerType;
  unsigned workers = 1;
};

struct Clustering {
  std::vector<EntityCluster> clusters;  // indexed by cluster_id
  // Pairs that reached the threshold but were blocked by the short-surface
  // rule.
  std::size_t short_links_suppressed = 0;
};

// Single-linkage clustering over distinct surface forms (distinct
// (surface, tag) pairs under the per-type policy). Cluster ids follow the
// lexicographic order of canonical names.
Clustering cluster_mentions(std::span<const EntityMention> mentions,
                            const ClusterOptions& options = {});

// Maps a mention's (surface, tag) to its cluster id.
class ClusterIndex {
 public:
  explicit ClusterIndex(std::span<const EntityCluster> clusters);

  std::optional<int> find(std::string_view surface, EntityTag tag) const;
  // Throws an internal error when the mention belongs to no cluster.
  int at(const EntityMention& mention) const;

 private:
  std::map<std::pair<std::string, EntityTag>, int, std::less<>> index_;
};

}  // namespace corpusmap
