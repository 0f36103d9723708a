#include "corpusmap/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "corpusmap/error.hpp"
#include "corpusmap/parallel.hpp"
#include "corpusmap/utf8.hpp"

namespace corpusmap {
namespace {

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller root wins so the forest shape is independent of call order.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

struct Item {
  std::string surface;
  std::u32string chars;
  std::u32string sorted_chars;  // for the multiset-overlap bound
  TagSet tags;
  std::size_t count = 0;
};

// Upper bound on the LCS: size of the character multiset intersection.
std::size_t overlap_bound(const std::u32string& a, const std::u32string& b) {
  std::size_t i = 0, j = 0, n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++n, ++i, ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return n;
}

bool reaches(std::size_t lcs, std::size_t shorter, double threshold) {
  return shorter > 0 &&
         static_cast<double>(lcs) / static_cast<double>(shorter) >= threshold;
}

}  // namespace

std::size_t lcs_length(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return 0;
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (char32_t ca : a) {
    std::size_t diag = 0;  // row[j-1] from the previous iteration of ca
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = ca == b[j - 1] ? diag + 1 : std::max(up, row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t lcs_length(std::string_view a, std::string_view b) {
  return lcs_length(utf8::decode(a), utf8::decode(b));
}

double similarity(std::u32string_view a, std::u32string_view b) {
  const std::size_t shorter = std::min(a.size(), b.size());
  if (shorter == 0) return 0.0;
  return static_cast<double>(lcs_length(a, b)) /
         static_cast<double>(shorter);
}

double similarity(std::string_view a, std::string_view b) {
  return similarity(utf8::decode(a), utf8::decode(b));
}

std::string canonical_name(const std::map<std::string, std::size_t>& members) {
  const std::string* best = nullptr;
  std::size_t best_count = 0;
  std::size_t best_len = 0;
  // std::map iterates lexicographically, so strict comparisons keep the
  // smallest name among full ties.
  for (const auto& [surface, count] : members) {
    const std::size_t len = utf8::length(surface);
    if (best == nullptr || count > best_count ||
        (count == best_count && len > best_len)) {
      best = &surface;
      best_count = count;
      best_len = len;
    }
  }
  return best ? *best : std::string();
}

Clustering cluster_mentions(std::span<const EntityMention> mentions,
                            const ClusterOptions& options) {
  if (!(options.threshold > 0.0)) {
    throw validation_error("clustering threshold must be > 0");
  }
  const bool per_type = options.policy == ClusterPolicy::kPerType;

  // Distinct items, ordered by (surface, tag) for determinism.
  std::map<std::pair<std::string, EntityTag>, std::size_t> per_type_counts;
  std::map<std::string, std::pair<TagSet, std::size_t>> cross_counts;
  for (const auto& m : mentions) {
    if (per_type) {
      ++per_type_counts[{m.surface, m.tag}];
    } else {
      auto& [tags, count] = cross_counts[m.surface];
      tags.insert(m.tag);
      ++count;
    }
  }
  std::vector<Item> items;
  auto add_item = [&](const std::string& surface, TagSet tags,
                      std::size_t count) {
    Item item;
    item.surface = surface;
    item.chars = utf8::decode(surface);
    item.sorted_chars = item.chars;
    std::sort(item.sorted_chars.begin(), item.sorted_chars.end());
    item.tags = std::move(tags);
    item.count = count;
    items.push_back(std::move(item));
  };
  if (per_type) {
    for (const auto& [key, count] : per_type_counts) {
      add_item(key.first, {key.second}, count);
    }
  } else {
    for (const auto& [surface, entry] : cross_counts) {
      add_item(surface, entry.first, entry.second);
    }
  }

  const std::size_t n = items.size();
  struct RowLinks {
    std::vector<std::size_t> linked;
    std::size_t suppressed = 0;
  };
  std::vector<RowLinks> rows(n);
  parallel_for(n, options.workers, [&](std::size_t i) {
    const Item& a = items[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Item& b = items[j];
      if (per_type && a.tags != b.tags) continue;
      const std::size_t shorter = std::min(a.chars.size(), b.chars.size());
      if (!reaches(overlap_bound(a.sorted_chars, b.sorted_chars), shorter,
                   options.threshold)) {
        continue;
      }
      if (!reaches(lcs_length(a.chars, b.chars), shorter,
                   options.threshold)) {
        continue;
      }
      if (shorter <= kShortSurfaceLength) {
        ++rows[i].suppressed;
        continue;
      }
      rows[i].linked.push_back(j);
    }
  });

  DisjointSet sets(n);
  Clustering result;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : rows[i].linked) sets.unite(i, j);
    result.short_links_suppressed += rows[i].suppressed;
  }

  std::map<std::size_t, EntityCluster> by_root;
  for (std::size_t i = 0; i < n; ++i) {
    EntityCluster& c = by_root[sets.find(i)];
    c.members[items[i].surface] += items[i].count;
    c.tags.insert(items[i].tags.begin(), items[i].tags.end());
    c.mention_count += items[i].count;
  }
  for (auto& [root, c] : by_root) {
    c.canonical = canonical_name(c.members);
    result.clusters.push_back(std::move(c));
  }
  std::sort(result.clusters.begin(), result.clusters.end(),
            [](const EntityCluster& a, const EntityCluster& b) {
              return std::tie(a.canonical, a.tags, a.members) <
                     std::tie(b.canonical, b.tags, b.members);
            });
  for (std::size_t i = 0; i < result.clusters.size(); ++i) {
    result.clusters[i].cluster_id = static_cast<int>(i);
  }
  return result;
}

ClusterIndex::ClusterIndex(std::span<const EntityCluster> clusters) {
  for (const auto& c : clusters) {
    for (const auto& [surface, count] : c.members) {
      for (EntityTag tag : c.tags) {
        const auto [it, inserted] =
            index_.emplace(std::make_pair(surface, tag), c.cluster_id);
        if (!inserted && it->second != c.cluster_id) {
          throw internal_error("surface \"" + surface +
                               "\" belongs to two clusters");
        }
      }
    }
  }
}

std::optional<int> ClusterIndex::find(std::string_view surface,
                                      EntityTag tag) const {
  const auto it = index_.find(std::make_pair(std::string(surface), tag));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int ClusterIndex::at(const EntityMention& mention) const {
  if (auto id = find(mention.surface, mention.tag)) return *id;
  throw internal_error("mention \"" + mention.surface + "\" (" +
                       std::string(tag_name(mention.tag)) +
                       ") belongs to no cluster");
}

}  // namespace corpusmap
