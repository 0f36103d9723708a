#include "corpusmap/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <set>
#include <type_traits>

#include <json.hpp>

#include "corpusmap/coocgraph.hpp"
#include "corpusmap/corpus.hpp"
#include "corpusmap/entities.hpp"
#include "corpusmap/error.hpp"
#include "corpusmap/normalize.hpp"
#include "corpusmap/parallel.hpp"
#include "corpusmap/temporal.hpp"
#include "corpusmap/writers.hpp"

namespace corpusmap {
namespace {

using nlohmann::json;

json counts_object(const RunCounts& c) {
  return {{"documents", c.documents},       {"sentences", c.sentences},
          {"mentions", c.mentions},         {"clusters", c.clusters},
          {"nodes", c.nodes},               {"edges", c.edges},
          {"associations", c.associations}, {"links", c.links}};
}

// Runs one stage, recording its wall time and tagging errors with its name.
template <typename Fn>
auto run_stage(RunReport& report, const char* name, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  auto record = [&] {
    const std::chrono::duration<double, std::milli> elapsed =
        std::chrono::steady_clock::now() - start;
    report.timings_ms.emplace_back(name, elapsed.count());
  };
  try {
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      record();
    } else {
      auto result = fn();
      record();
      return result;
    }
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.what());
  } catch (const std::exception& e) {
    throw internal_error(std::string(name) + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw input_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw input_error("error writing " + path.string());
}

}  // namespace

std::string counts_json(const RunCounts& counts) {
  return counts_object(counts).dump(2) + "\n";
}

std::string report_json(const RunReport& report) {
  json timings = json::object();
  for (const auto& [stage, ms] : report.timings_ms) timings[stage] = ms;
  const json root = {{"counts", counts_object(report.counts)},
                     {"warnings", report.warnings},
                     {"artifacts", report.artifacts},
                     {"timings_ms", std::move(timings)}};
  return root.dump(2) + "\n";
}

std::map<std::string, std::string> build_artifacts(const PipelineConfig& cfg,
                                                   RunReport& report) {
  auto& counts = report.counts;
  auto& warnings = report.warnings;
  std::map<std::string, std::string> artifacts;

  const Corpus corpus = run_stage(report, "corpus", [&] {
    const CorpusManifest manifest = load_manifest(cfg.manifest);
    SegmentOptions seg;
    seg.abbreviations = cfg.abbreviations;
    return load_corpus(manifest, seg, cfg.workers);
  });
  if (!corpus.empty_doc_ids.empty()) {
    warnings.push_back(std::to_string(corpus.empty_doc_ids.size()) +
                       " empty document(s) excluded");
  }
  counts.documents = corpus.documents.size();
  counts.sentences = corpus.sentence_count();
  if (corpus.documents.empty()) {
    warnings.push_back("no documents; nothing to export");
    return artifacts;
  }

  const std::vector<EntityMention> mentions =
      run_stage(report, "entities", [&] {
        std::vector<std::vector<EntityMention>> per_doc(
            corpus.documents.size());
        std::vector<std::size_t> repaired(corpus.documents.size(), 0);
        if (cfg.ner_mode == NerMode::kConll) {
          parallel_for(corpus.documents.size(), cfg.workers,
                       [&](std::size_t d) {
                         auto r = load_conll(cfg.conll_dir, corpus.documents[d]);
                         per_doc[d] = std::move(r.mentions);
                         repaired[d] = r.repaired_inside_tags;
                       });
        } else {
          const Gazetteer gazetteer =
              cfg.gazetteer ? load_gazetteer(*cfg.gazetteer) : Gazetteer{};
          const HeuristicRecognizer recognizer(gazetteer);
          parallel_for(corpus.documents.size(), cfg.workers,
                       [&](std::size_t d) {
                         per_doc[d] = recognizer.recognize(corpus.documents[d]);
                       });
        }
        std::size_t total_repaired = 0;
        std::vector<EntityMention> all;
        for (std::size_t d = 0; d < per_doc.size(); ++d) {
          total_repaired += repaired[d];
          for (auto& m : per_doc[d]) all.push_back(std::move(m));
        }
        if (total_repaired > 0) {
          warnings.push_back(std::to_string(total_repaired) +
                             " I- tag(s) without a matching B- treated as B-");
        }
        return all;
      });
  counts.mentions = mentions.size();

  const Clustering clustering = run_stage(report, "normalize", [&] {
    ClusterOptions opts;
    opts.threshold = cfg.threshold;
    opts.policy = cfg.policy;
    opts.workers = cfg.workers;
    return cluster_mentions(mentions, opts);
  });
  if (clustering.short_links_suppressed > 0) {
    warnings.push_back(std::to_string(clustering.short_links_suppressed) +
                       " similarity link(s) blocked for surfaces of <= " +
                       std::to_string(kShortSurfaceLength) + " characters");
  }
  counts.clusters = clustering.clusters.size();

  const CoocGraph graph = run_stage(report, "graph", [&] {
    GraphOptions opts;
    opts.types = cfg.types;
    opts.coref = cfg.coref;
    opts.workers = cfg.workers;
    return filter_graph(build_graph(clustering.clusters, mentions, corpus, opts),
                        cfg.filter);
  });
  counts.nodes = graph.nodes.size();
  counts.edges = graph.edges.size();

  std::optional<SankeySpec> sankey;
  if (cfg.boundaries.empty()) {
    warnings.push_back("temporal stage skipped: no period boundaries");
  } else {
    run_stage(report, "temporal", [&] {
      std::vector<Term> terms;
      if (cfg.term_list) {
        terms = terms_from_list(load_word_list(*cfg.term_list));
      } else {
        std::set<std::string> stoplist = default_stoplist();
        if (cfg.stoplist) {
          const auto words = load_word_list(*cfg.stoplist);
          stoplist = std::set<std::string>(words.begin(), words.end());
        }
        terms = extract_terms(corpus, mentions, clustering.clusters,
                              cfg.candidate_terms, stoplist);
        if (terms.size() < cfg.candidate_terms) {
          warnings.push_back("only " + std::to_string(terms.size()) +
                             " candidate term(s) available");
        }
      }
      const Binning binning = bin_documents(corpus, cfg.boundaries);
      if (!binning.unassigned.empty()) {
        warnings.push_back(std::to_string(binning.unassigned.size()) +
                           " undated document(s) excluded from periods");
      }
      const auto associations =
          associate(mentions, clustering.clusters, terms, corpus, binning,
                    cfg.types, cfg.workers);
      counts.associations = associations.size();
      if (binning.periods.size() < 2) {
        warnings.push_back("flow diagram skipped: fewer than two periods");
        return;
      }
      sankey = build_sankey(associations, binning.periods, clustering.clusters,
                            cfg.top_terms);
      counts.links = sankey->links.size();
    });
  }

  run_stage(report, "serialize", [&] {
    for (OutputFormat f : cfg.formats) {
      const std::string name(artifact_file(f));
      switch (f) {
        case OutputFormat::kGexf:
          artifacts[name] = write_gexf(graph);
          break;
        case OutputFormat::kGraphJson:
          artifacts[name] = write_graph_json(graph);
          break;
        case OutputFormat::kEdgesCsv:
          artifacts[name] = write_edges_csv(graph);
          break;
        case OutputFormat::kSankeyJson:
          if (sankey) artifacts[name] = write_sankey_json(*sankey);
          break;
      }
    }
  });
  return artifacts;
}

RunReport run_pipeline(const PipelineConfig& cfg) {
  RunReport report;
  const auto artifacts = build_artifacts(cfg, report);
  for (const auto& [name, bytes] : artifacts) report.artifacts.push_back(name);

  run_stage(report, "write", [&] {
    std::filesystem::create_directories(cfg.output_dir);
    // Leftovers from an earlier run with other formats would misdescribe
    // this one.
    for (OutputFormat f : {OutputFormat::kGexf, OutputFormat::kGraphJson,
                           OutputFormat::kSankeyJson, OutputFormat::kEdgesCsv}) {
      const std::string name(artifact_file(f));
      if (!artifacts.count(name)) {
        std::filesystem::remove(cfg.output_dir / name);
      }
    }
    std::vector<std::filesystem::path> written;
    try {
      for (const auto& [name, bytes] : artifacts) {
        const auto path = cfg.output_dir / name;
        write_file(path, bytes);
        written.push_back(path);
      }
      write_file(cfg.output_dir / kReportFile, report_json(report));
    } catch (...) {
      std::error_code ec;
      for (const auto& path : written) std::filesystem::remove(path, ec);
      throw;
    }
  });
  return report;
}

}  // namespace corpusmap
