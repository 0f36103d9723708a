#include "corpusmap/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <tuple>

#include "corpusmap/error.hpp"
#include "corpusmap/parallel.hpp"
#include "corpusmap/utf8.hpp"

namespace corpusmap {
namespace {

bool has_alnum(std::string_view surface) {
  const std::u32string chars = utf8::decode(surface);
  return std::any_of(chars.begin(), chars.end(),
                     [](char32_t c) { return utf8::is_alnum(c); });
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j > i) words.push_back(text.substr(i, j - i));
    i = j;
  }
  return words;
}

// Per sentence, which tokens fall inside a mention span.
std::map<std::string, std::vector<std::vector<bool>>> mention_masks(
    const Corpus& corpus, std::span<const EntityMention> mentions) {
  std::map<std::string, std::vector<std::vector<bool>>> masks;
  std::map<std::string, const AnalyzedDocument*> docs;
  for (const auto& d : corpus.documents) {
    docs.emplace(d.doc.doc_id, &d);
    auto& doc_mask = masks[d.doc.doc_id];
    for (const auto& tokens : d.tokens) doc_mask.emplace_back(tokens.size());
  }
  for (const auto& m : mentions) {
    const auto it = masks.find(m.doc_id);
    if (it == masks.end() || m.sentence >= it->second.size()) continue;
    const auto& tokens = docs.at(m.doc_id)->tokens[m.sentence];
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (m.span.contains(tokens[t].span)) it->second[m.sentence][t] = true;
    }
  }
  return masks;
}

}  // namespace

std::set<std::string> default_stoplist() {
  return {"a",     "about", "after", "all",   "also",  "an",    "and",
          "any",   "are",   "as",    "at",    "be",    "been",  "before",
          "but",   "by",    "can",   "could", "did",   "do",    "does",
          "for",   "from",  "had",   "has",   "have",  "he",    "her",
          "his",   "how",   "i",     "if",    "in",    "into",  "is",
          "it",    "its",   "may",   "more",  "most",  "no",    "not",
          "of",    "on",    "one",   "or",    "other", "our",   "out",
          "over",  "said",  "she",   "should", "so",   "some",  "such",
          "than",  "that",  "the",   "their", "them",  "then",  "there",
          "these", "they",  "this",  "those", "to",    "under", "up",
          "was",   "we",    "were",  "what",  "when",  "which", "while",
          "who",   "will",  "with",  "would", "you",   "your"};
}

std::vector<std::string> load_word_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read word list: " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto words_in_line = split_words(line);
    if (words_in_line.empty()) continue;
    std::string joined;
    for (const auto& w : words_in_line) {
      if (!joined.empty()) joined += ' ';
      joined += w;
    }
    words.push_back(utf8::fold_case(joined));
  }
  return words;
}

std::vector<Term> extract_terms(const Corpus& corpus,
                                std::span<const EntityMention> mentions,
                                std::span<const EntityCluster> clusters,
                                std::size_t k,
                                const std::set<std::string>& stoplist) {
  if (k == 0) throw validation_error("term count must be at least 1");
  std::set<std::string> surfaces;
  for (const auto& c : clusters) {
    for (const auto& [surface, count] : c.members) {
      surfaces.insert(utf8::fold_case(surface));
    }
  }
  const auto masks = mention_masks(corpus, mentions);

  struct Stat {
    std::size_t tf = 0;
    std::size_t df = 0;
  };
  std::map<std::string, Stat> stats;
  for (const auto& d : corpus.documents) {
    std::map<std::string, std::size_t> tf;
    const auto& doc_mask = masks.at(d.doc.doc_id);
    for (std::size_t s = 0; s < d.tokens.size(); ++s) {
      const auto& tokens = d.tokens[s];
      std::vector<std::string> folded(tokens.size());
      std::vector<bool> eligible(tokens.size(), false);
      for (std::size_t t = 0; t < tokens.size(); ++t) {
        folded[t] = utf8::fold_case(tokens[t].surface);
        eligible[t] = !doc_mask[s][t] && has_alnum(tokens[t].surface) &&
                      !stoplist.count(folded[t]);
        if (eligible[t]) ++tf[folded[t]];
        if (t > 0 && eligible[t - 1] && eligible[t]) {
          ++tf[folded[t - 1] + " " + folded[t]];
        }
      }
    }
    for (const auto& [text, count] : tf) {
      if (surfaces.count(text)) continue;
      auto& st = stats[text];
      st.tf += count;
      ++st.df;
    }
  }

  const double n = static_cast<double>(corpus.documents.size());
  std::vector<Term> terms;
  terms.reserve(stats.size());
  for (const auto& [text, st] : stats) {
    terms.push_back({text, static_cast<double>(st.tf) *
                               std::log(n / static_cast<double>(st.df))});
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.text < b.text;
  });
  if (terms.size() > k) terms.resize(k);
  return terms;
}

std::vector<Term> terms_from_list(const std::vector<std::string>& texts) {
  std::vector<Term> terms;
  for (const auto& t : texts) terms.push_back({t, 0.0});
  return terms;
}

Binning bin_documents(const Corpus& corpus,
                      const std::vector<int>& boundaries) {
  if (boundaries.empty()) {
    throw validation_error("at least one period boundary is required");
  }
  for (std::size_t i = 1; i < boundaries.size(); ++i) {
    if (boundaries[i] <= boundaries[i - 1]) {
      throw validation_error("period boundaries must be strictly ascending");
    }
  }
  struct Bin {
    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    std::vector<std::string> docs;
  };
  std::vector<Bin> bins(boundaries.size() + 1);
  Binning binning;
  for (const auto& d : corpus.documents) {
    if (!d.doc.year) {
      binning.unassigned.push_back(d.doc.doc_id);
      continue;
    }
    const int year = *d.doc.year;
    const auto bin = static_cast<std::size_t>(
        std::upper_bound(boundaries.begin(), boundaries.end(), year) -
        boundaries.begin());
    bins[bin].lo = std::min(bins[bin].lo, year);
    bins[bin].hi = std::max(bins[bin].hi, year);
    bins[bin].docs.push_back(d.doc.doc_id);
  }
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (bins[b].docs.empty()) continue;
    Period p;
    p.period_id = "P" + std::to_string(b + 1);
    p.start_year = bins[b].lo;
    p.end_year = bins[b].hi;
    p.label = p.start_year == p.end_year
                  ? std::to_string(p.start_year)
                  : std::to_string(p.start_year) + "-" +
                        std::to_string(p.end_year);
    for (const auto& id : bins[b].docs) binning.assignment[id] = p.period_id;
    binning.periods.push_back(std::move(p));
  }
  return binning;
}

std::vector<Association> associate(std::span<const EntityMention> mentions,
                                   std::span<const EntityCluster> clusters,
                                   std::span<const Term> terms,
                                   const Corpus& corpus, const Binning& binning,
                                   const TagSet& types, unsigned workers) {
  const ClusterIndex index(clusters);
  std::map<std::string, std::size_t> period_order;
  for (const auto& p : binning.periods) {
    period_order.emplace(p.period_id, period_order.size());
  }
  std::vector<std::vector<std::string>> term_words;
  for (const auto& t : terms) term_words.push_back(split_words(t.text));

  // mentioned[doc_id][sentence] -> cluster ids
  std::map<std::string, std::map<std::size_t, std::set<int>>> mentioned;
  for (const auto& m : mentions) {
    if (!types.count(m.tag)) continue;
    mentioned[m.doc_id][m.sentence].insert(index.at(m));
  }

  using Key = std::tuple<std::size_t, int, std::string>;  // period, cluster, term
  std::vector<std::map<Key, std::size_t>> per_doc(corpus.documents.size());
  parallel_for(corpus.documents.size(), workers, [&](std::size_t d) {
    const auto& doc = corpus.documents[d];
    const auto assigned = binning.assignment.find(doc.doc.doc_id);
    if (assigned == binning.assignment.end()) return;
    const auto order = period_order.find(assigned->second);
    if (order == period_order.end()) return;
    const auto doc_mentions = mentioned.find(doc.doc.doc_id);
    if (doc_mentions == mentioned.end()) return;

    for (const auto& [s, ids] : doc_mentions->second) {
      if (s >= doc.tokens.size()) continue;
      const auto& tokens = doc.tokens[s];
      std::vector<std::string> folded;
      folded.reserve(tokens.size());
      for (const auto& t : tokens) folded.push_back(utf8::fold_case(t.surface));

      for (std::size_t ti = 0; ti < terms.size(); ++ti) {
        const auto& words = term_words[ti];
        if (words.empty() || words.size() > folded.size()) continue;
        bool found = false;
        for (std::size_t i = 0; i + words.size() <= folded.size() && !found;
             ++i) {
          found = std::equal(words.begin(), words.end(),
                             folded.begin() + static_cast<std::ptrdiff_t>(i));
        }
        if (!found) continue;
        for (int id : ids) ++per_doc[d][{order->second, id, terms[ti].text}];
      }
    }
  });

  std::map<Key, std::size_t> total;
  for (const auto& counts : per_doc) {
    for (const auto& [key, w] : counts) total[key] += w;
  }
  std::vector<Association> out;
  out.reserve(total.size());
  for (const auto& [key, w] : total) {
    const auto& [order, id, term] = key;
    out.push_back({id, term, binning.periods[order].period_id, w});
  }
  return out;
}

SankeySpec build_sankey(std::span<const Association> associations,
                        std::span<const Period> periods,
                        std::span<const EntityCluster> clusters,
                        std::size_t top_terms_per_period) {
  if (periods.size() < 2) {
    throw validation_error("a flow diagram needs at least two periods");
  }
  std::map<std::string, std::size_t> period_order;
  for (const auto& p : periods) period_order.emplace(p.period_id, period_order.size());
  std::map<int, std::string> names;
  for (const auto& c : clusters) names.emplace(c.cluster_id, c.canonical);

  // weights[period][cluster][term]
  std::vector<std::map<int, std::map<std::string, std::size_t>>> weights(
      periods.size());
  std::vector<std::map<std::string, std::size_t>> term_totals(periods.size());
  for (const auto& a : associations) {
    const auto it = period_order.find(a.period_id);
    if (it == period_order.end()) {
      throw internal_error("association references unknown period " +
                           a.period_id);
    }
    weights[it->second][a.cluster_id][a.term] += a.weight;
    term_totals[it->second][a.term] += a.weight;
  }

  std::vector<std::set<std::string>> kept(periods.size());
  for (std::size_t p = 0; p < periods.size(); ++p) {
    std::vector<std::pair<std::string, std::size_t>> ranked(
        term_totals[p].begin(), term_totals[p].end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) {
                       return a.second > b.second;
                     });
    for (std::size_t i = 0; i < ranked.size() && i < top_terms_per_period;
         ++i) {
      kept[p].insert(ranked[i].first);
    }
  }

  // Strongest kept term of a cluster in a period; ties lexicographic.
  auto strongest = [&](std::size_t p, int cluster)
      -> std::optional<std::pair<std::string, std::size_t>> {
    const auto it = weights[p].find(cluster);
    if (it == weights[p].end()) return std::nullopt;
    std::optional<std::pair<std::string, std::size_t>> best;
    for (const auto& [term, w] : it->second) {
      if (!kept[p].count(term)) continue;
      if (!best || w > best->second) best = {term, w};
    }
    return best;
  };

  struct Flow {
    std::size_t value = 0;
    std::vector<std::string> entities;
  };
  // (source period, source term, target term)
  std::map<std::tuple<std::size_t, std::string, std::string>, Flow> flows;
  std::set<int> cluster_ids;
  for (const auto& per_cluster : weights) {
    for (const auto& [id, terms] : per_cluster) cluster_ids.insert(id);
  }
  for (std::size_t p = 0; p + 1 < periods.size(); ++p) {
    for (int id : cluster_ids) {
      const auto from = strongest(p, id);
      const auto to = strongest(p + 1, id);
      if (!from || !to) continue;
      Flow& f = flows[{p, from->first, to->first}];
      f.value += std::min(from->second, to->second);
      const auto name = names.find(id);
      f.entities.push_back(name != names.end() ? name->second
                                               : std::to_string(id));
    }
  }

  SankeySpec spec;
  spec.periods.assign(periods.begin(), periods.end());
  std::set<std::pair<std::size_t, std::string>> node_keys;
  for (auto& [key, flow] : flows) {
    const auto& [p, source_term, target_term] = key;
    SankeyLink link;
    link.source = periods[p].period_id + ":" + source_term;
    link.target = periods[p + 1].period_id + ":" + target_term;
    link.value = flow.value;
    std::sort(flow.entities.begin(), flow.entities.end());
    link.entities = std::move(flow.entities);
    spec.links.push_back(std::move(link));
    node_keys.insert({p, source_term});
    node_keys.insert({p + 1, target_term});
  }
  for (const auto& [p, term] : node_keys) {
    spec.nodes.push_back(
        {periods[p].period_id + ":" + term, periods[p].period_id, term});
  }
  return spec;
}

}  // namespace corpusmap
