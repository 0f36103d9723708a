#include <doctest.h>

#include <algorithm>
#include <random>

#include "corpusmap/coocgraph.hpp"
#include "corpusmap/error.hpp"
#include "support/oracles.hpp"

using namespace corpusmap;
namespace oracle = corpusmap::testing;

namespace {

struct Fixture {
  Corpus corpus;
  std::vector<EntityMention> mentions;
  Clustering clustering;
};

// Every token listed in `tags` is an annotated single-token mention.
Fixture build(const std::vector<std::string>& texts,
              const std::map<std::string, EntityTag>& tags) {
  Fixture f;
  for (std::size_t d = 0; d < texts.size(); ++d) {
    f.corpus.documents.push_back(
        analyze_document(make_document("d" + std::to_string(d), texts[d])));
    const auto& doc = f.corpus.documents.back();
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      for (const auto& t : doc.tokens[s]) {
        const auto it = tags.find(t.surface);
        if (it == tags.end()) continue;
        f.mentions.push_back({t.surface, it->second, doc.doc.doc_id, s, t.span});
      }
    }
  }
  ClusterOptions opts;
  opts.threshold = 1.01;
  f.clustering = cluster_mentions(f.mentions, opts);
  return f;
}

int id_of(const Fixture& f, const std::string& canonical) {
  for (const auto& c : f.clustering.clusters) {
    if (c.canonical == canonical) return c.cluster_id;
  }
  FAIL("no cluster " << canonical);
  return -1;
}

constexpr auto kPer = EntityTag::kPerson;
constexpr auto kOrg = EntityTag::kOrganization;
constexpr auto kLoc = EntityTag::kLocation;

CoocGraph abc_graph() {
  CoocGraph g;
  g.nodes = {{0, "A", {kPer}, 2}, {1, "B", {kPer}, 3}, {2, "C", {kOrg}, 1}};
  g.edges = {{0, 1, 2}, {0, 2, 1}, {1, 2, 1}};
  return g;
}

}  // namespace

TEST_CASE("sentence-counted weights") {
  const auto f = build({"Alpha met Beta. Alpha, Beta and Gamma met."},
                       {{"Alpha", kPer}, {"Beta", kPer}, {"Gamma", kOrg}});
  const auto g = build_graph(f.clustering.clusters, f.mentions, f.corpus);
  const int a = id_of(f, "Alpha"), b = id_of(f, "Beta"), c = id_of(f, "Gamma");
  CHECK(g.edges.size() == 3);
  CHECK(g.weight(a, b) == 2);
  CHECK(g.weight(b, a) == 2);
  CHECK(g.weight(a, c) == 1);
  CHECK(g.weight(b, c) == 1);
  CHECK(g.node(a)->freq == 2);
  CHECK(g.node(c)->label == "Gamma");
  for (const auto& e : g.edges) CHECK(e.source < e.target);
}

TEST_CASE("repeated mentions in one sentence count once") {
  const auto f = build({"Alpha saw Alpha and Beta."}, {{"Alpha", kPer}, {"Beta", kPer}});
  const auto g = build_graph(f.clustering.clusters, f.mentions, f.corpus);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].weight == 1);
  CHECK(g.node(id_of(f, "Alpha"))->freq == 2);
}

TEST_CASE("one cluster per sentence gives no edges") {
  const auto f = build({"Alpha left. Beta came. Alpha stayed."},
                       {{"Alpha", kPer}, {"Beta", kPer}});
  const auto g = build_graph(f.clustering.clusters, f.mentions, f.corpus);
  CHECK(g.edges.empty());
  REQUIRE(g.nodes.size() == 2);
  CHECK(g.node(id_of(f, "Alpha"))->freq == 2);
}

TEST_CASE("types restrict nodes and edges") {
  const auto f = build({"Alpha visited Paris with Beta."},
                       {{"Alpha", kPer}, {"Beta", kOrg}, {"Paris", kLoc}});
  const auto g = build_graph(f.clustering.clusters, f.mentions, f.corpus);
  CHECK(g.nodes.size() == 2);
  CHECK(g.edges.size() == 1);
  GraphOptions opts;
  opts.types = {kPer, kOrg, kLoc};
  CHECK(build_graph(f.clustering.clusters, f.mentions, f.corpus, opts).edges.size() == 3);
  opts.types = {kLoc};
  const auto only_loc = build_graph(f.clustering.clusters, f.mentions, f.corpus, opts);
  CHECK(only_loc.nodes.size() == 1);
  CHECK(only_loc.edges.empty());
}

TEST_CASE("alias coreference adds later bare recurrences") {
  // "Schapiro" is annotated in the first sentence only as part of the
  // cluster; later sentences use the bare short form without annotation.
  Fixture f;
  f.corpus.documents.push_back(analyze_document(make_document(
      "d0", "Mary Schapiro met Goldman. Schapiro also called Enron. Goldman wrote back.")));
  const auto& doc = f.corpus.documents[0];
  auto mention = [&](std::size_t s, std::size_t first, std::size_t last, EntityTag tag) {
    const Span span{doc.tokens[s][first].span.start, doc.tokens[s][last].span.end};
    f.mentions.push_back({doc.doc.slice(span), tag, "d0", s, span});
  };
  mention(0, 0, 1, kPer);  // Mary Schapiro
  mention(0, 3, 3, kOrg);  // Goldman
  mention(1, 3, 3, kOrg);  // Enron
  mention(2, 0, 0, kOrg);  // Goldman
  // A second document proves alias state does not leak across documents.
  f.corpus.documents.push_back(
      analyze_document(make_document("d1", "Schapiro called Enron.")));
  f.mentions.push_back({"Enron", kOrg, "d1", 0, f.corpus.documents[1].tokens[0][2].span});
  // A cluster whose shortest member is "Schapiro".
  EntityMention extra = f.mentions[0];
  extra.surface = "Schapiro";
  auto all = f.mentions;
  all.push_back(extra);
  f.clustering = cluster_mentions(all);
  REQUIRE(f.clustering.clusters.size() == 3);

  const int schapiro = id_of(f, "Mary Schapiro");
  const int enron = id_of(f, "Enron");
  const auto none = build_graph(f.clustering.clusters, f.mentions, f.corpus);
  CHECK(none.weight(schapiro, enron) == 0);
  GraphOptions opts;
  opts.coref = CorefMode::kAlias;
  const auto alias = build_graph(f.clustering.clusters, f.mentions, f.corpus, opts);
  CHECK(alias.weight(schapiro, enron) == 1);
  CHECK(alias.edges.size() > none.edges.size());
  CHECK(alias.nodes == none.nodes);
}

TEST_CASE("mentions outside every cluster are an internal error") {
  const auto f = build({"Alpha met Beta."}, {{"Alpha", kPer}, {"Beta", kPer}});
  auto stray = f.mentions;
  stray[0].surface = "Gamma";
  try {
    build_graph(f.clustering.clusters, stray, f.corpus);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInternal);
  }
}

TEST_CASE("filter examples") {
  const CoocGraph g = abc_graph();
  CHECK(filter_graph(g, {}) == g);
  const auto strong = filter_graph(g, {0, 2, true});
  REQUIRE(strong.nodes.size() == 2);
  CHECK(strong.nodes[0].label == "A");
  CHECK(strong.nodes[1].label == "B");
  CHECK(strong.edges == std::vector<GraphEdge>{{0, 1, 2}});
  CHECK(filter_graph(g, {0, 3, true}) == CoocGraph{});
  const auto frequent = filter_graph(g, {2, 0, false});
  CHECK(frequent.nodes.size() == 2);
  CHECK(frequent.edges.size() == 1);
  const auto keep_isolated = filter_graph(g, {0, 3, false});
  CHECK(keep_isolated.nodes.size() == 3);
  CHECK(keep_isolated.edges.empty());
  CHECK(g == abc_graph());
}

TEST_CASE("stats examples") {
  CHECK(graph_stats({}) == GraphStats{});
  CHECK(graph_stats(abc_graph()) == GraphStats{3, 3, 0, 1, 2, 4});
  CoocGraph two;
  two.nodes = {{0, "A", {kPer}, 1}, {1, "B", {kPer}, 1}};
  const auto s = graph_stats(two);
  CHECK(s.component_count == 2);
  CHECK(s.isolated_count == 2);
}

TEST_CASE("property: graph equals brute-force pair count and survives shuffles") {
  std::mt19937 rng(4242);
  const std::vector<std::string> names = {"Ann", "Bob", "Cid", "Dee",
                                          "Eve", "Fay", "Gus", "Hal"};
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> doc_count(1, 5), sent_count(1, 10),
        per_sentence(0, 4), pick(0, static_cast<int>(names.size()) - 1);
    std::vector<std::string> texts;
    for (int d = doc_count(rng); d > 0; --d) {
      std::string text;
      for (int s = sent_count(rng); s > 0; --s) {
        text += "Then";
        for (int k = per_sentence(rng); k > 0; --k) text += " " + names[pick(rng)];
        text += " spoke. ";
      }
      texts.push_back(text);
    }
    std::map<std::string, EntityTag> tags;
    for (const auto& n : names) tags[n] = kPer;
    const auto f = build(texts, tags);

    std::vector<std::set<int>> sentence_sets;
    for (const auto& doc : f.corpus.documents) {
      for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
        std::set<int> present;
        for (const auto& m : f.mentions) {
          if (m.doc_id == doc.doc.doc_id && m.sentence == s) {
            present.insert(id_of(f, m.surface));
          }
        }
        sentence_sets.push_back(present);
      }
    }
    const int k = static_cast<int>(f.clustering.clusters.size());
    const auto expected = oracle::brute_force_cooccurrence(sentence_sets, k);
    GraphOptions opts;
    opts.workers = 3;
    const auto g = build_graph(f.clustering.clusters, f.mentions, f.corpus, opts);
    std::size_t nonzero = 0;
    for (const auto& [pair, w] : expected) {
      CHECK(g.weight(pair.first, pair.second) == w);
      CHECK(g.weight(pair.second, pair.first) == w);
      if (w > 0) ++nonzero;
    }
    CHECK(g.edges.size() == nonzero);

    // Document order does not matter.
    auto shuffled = f;
    std::shuffle(shuffled.corpus.documents.begin(), shuffled.corpus.documents.end(), rng);
    std::shuffle(shuffled.mentions.begin(), shuffled.mentions.end(), rng);
    CHECK(build_graph(shuffled.clustering.clusters, shuffled.mentions, shuffled.corpus) == g);

    // Filters only ever shrink, and higher thresholds shrink further.
    for (std::size_t w = 0; w < 4; ++w) {
      const auto lo = filter_graph(g, {w, w, trial % 2 == 0});
      const auto hi = filter_graph(g, {w + 1, w + 1, trial % 2 == 0});
      for (const auto& n : hi.nodes) CHECK(lo.node(n.id) != nullptr);
      for (const auto& e : hi.edges) CHECK(lo.weight(e.source, e.target) == e.weight);
      for (const auto& e : lo.edges) CHECK(g.weight(e.source, e.target) == e.weight);
    }
  }
}
