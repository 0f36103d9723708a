#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "corpusmap/corpus.hpp"
#include "corpusmap/entities.hpp"
#include "corpusmap/normalize.hpp"

namespace corpusmap {

struct Period {
  std::string period_id;  // "P<k>", k = 1-based bin index
  int start_year = 0;     // observed, inclusive
  int end_year = 0;
  std::string label;      // "2006-2007", or "2008" for a single year

  friend bool operator==(const Period&, const Period&) = default;
};

struct Term {
  std::string text;  // case-folded; words separated by single spaces
  double score = 0.0;
};

struct Association {
  int cluster_id = 0;
  std::string term;
  std::string period_id;
  std::size_t weight = 0;  // sentences

  friend bool operator==(const Association&, const Association&) = default;
};

struct SankeyNode {
  std::string id;  // period_id + ":" + term
  std::string period;
  std::string term;

  friend bool operator==(const SankeyNode&, const SankeyNode&) = default;
};

struct SankeyLink {
  std::string source;
  std::string target;
  std::size_t value = 0;
  std::vector<std::string> entities;  // canonical names, sorted

  friend bool operator==(const SankeyLink&, const SankeyLink&) = default;
};

struct SankeySpec {
  std::vector<Period> periods;
  std::vector<SankeyNode> nodes;  // by (period order, term)
  std::vector<SankeyLink> links;  // by (source period, source term, target term)

  friend bool operator==(const SankeySpec&, const SankeySpec&) = default;
};

std::set<std::string> default_stoplist();

// One entry per non-empty line, case-folded.
std::vector<std::string> load_word_list(const std::filesystem::path& path);

// Top-k unigrams and bigrams by summed tf * ln(N / df), ties broken
// lexicographically. Tokens inside entity mentions, stopwords, tokens
// without letters or digits, and terms equal to an entity member surface
// are not candidates. Returns fewer than k terms when candidates run out.
std::vector<Term> extract_terms(const Corpus& corpus,
                                std::span<const EntityMention> mentions,
                                std::span<const EntityCluster> clusters,
                                std::size_t k,
                                const std::set<std::string>& stoplist);

// User-imposed vocabulary; order kept, score 0.
std::vector<Term> terms_from_list(const std::vector<std::string>& texts);

struct Binning {
  std::vector<Period> periods;                       // non-empty, ascending
  std::map<std::string, std::string> assignment;     // doc_id -> period_id
  std::vector<std::string> unassigned;               // documents with no year
};

// Boundaries [b1..bn] split years into (-inf, b1-1], [b1, b2-1], ...,
// [bn, +inf).
Binning bin_documents(const Corpus& corpus, const std::vector<int>& boundaries);

// Sentences of each period containing a mention of the cluster and the term
// (case-folded token run). Only mentions whose tag is in `types` count.
// Sorted by (period order, cluster_id, term).
std::vector<Association> associate(std::span<const EntityMention> mentions,
                                   std::span<const EntityCluster> clusters,
                                   std::span<const Term> terms,
                                   const Corpus& corpus, const Binning& binning,
                                   const TagSet& types, unsigned workers = 1);

// Keeps the top terms of each period, then for every cluster present in two
// adjacent periods adds a flow from its strongest term in the first to its
// strongest term in the second, valued at the smaller of the two weights.
SankeySpec build_sankey(std::span<const Association> associations,
                        std::span<const Period> periods,
                        std::span<const EntityCluster> clusters,
                        std::size_t top_terms_per_period);

}  // namespace corpusmap
