#include "corpusmap/config.hpp"

#include <unistd.h>

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "corpusmap/error.hpp"

namespace corpusmap {
namespace {

using nlohmann::json;

constexpr std::pair<OutputFormat, std::pair<std::string_view, std::string_view>>
    kFormats[] = {
        {OutputFormat::kGexf, {"gexf", "graph.gexf"}},
        {OutputFormat::kGraphJson, {"graph_json", "graph.json"}},
        {OutputFormat::kSankeyJson, {"sankey_json", "sankey.json"}},
        {OutputFormat::kEdgesCsv, {"edges_csv", "edges.csv"}},
};

// Reads one JSON object, rejecting keys it does not know about.
class Section {
 public:
  Section(const json& obj, std::string path, std::set<std::string> known)
      : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw fail("", "must be an object");
    for (const auto& [key, value] : obj_.items()) {
      if (!known.count(key)) {
        throw config_error("unknown config key \"" + qualified(key) + "\"");
      }
    }
  }

  bool has(const char* key) const {
    return obj_.contains(key) && !obj_.at(key).is_null();
  }
  const json& at(const char* key) const { return obj_.at(key); }

  Error fail(const std::string& key, const std::string& why) const {
    const std::string where = key.empty() ? path_ : qualified(key);
    return config_error("config \"" + (where.empty() ? "<root>" : where) +
                        "\": " + why);
  }

  std::string string(const char* key) const {
    if (!at(key).is_string()) throw fail(key, "must be a string");
    return at(key).get<std::string>();
  }

  long long integer(const char* key, long long min) const {
    if (!at(key).is_number_integer()) throw fail(key, "must be an integer");
    const auto v = at(key).get<long long>();
    if (v < min) throw fail(key, "must be >= " + std::to_string(min));
    return v;
  }

  std::vector<std::string> strings(const char* key) const {
    if (!at(key).is_array()) throw fail(key, "must be an array of strings");
    std::vector<std::string> out;
    for (const auto& v : at(key)) {
      if (!v.is_string()) throw fail(key, "must be an array of strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  }

  std::string qualified(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json& obj_;
  std::string path_;
};

bool writable_location(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::path probe = dir;
  while (!probe.empty() && !std::filesystem::exists(probe, ec)) {
    const auto parent = probe.parent_path();
    if (parent == probe) break;
    probe = parent;
  }
  if (probe.empty()) probe = ".";
  if (!std::filesystem::is_directory(probe, ec)) return false;
  return ::access(probe.c_str(), W_OK | X_OK) == 0;
}

}  // namespace

std::string_view format_name(OutputFormat format) {
  for (const auto& [f, names] : kFormats) {
    if (f == format) return names.first;
  }
  return "?";
}

std::string_view artifact_file(OutputFormat format) {
  for (const auto& [f, names] : kFormats) {
    if (f == format) return names.second;
  }
  return "?";
}

PipelineConfig parse_config(std::string_view json_text,
                            const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  auto resolve = [&](const std::string& p) { return base_dir / p; };

  PipelineConfig cfg;
  const Section top(root, "",
                    {"manifest", "workers", "segmentation", "ner", "normalize",
                     "graph", "temporal", "output"});
  if (!top.has("manifest")) throw top.fail("manifest", "is required");
  cfg.manifest = resolve(top.string("manifest"));
  if (top.has("workers")) {
    cfg.workers = static_cast<unsigned>(top.integer("workers", 1));
  }

  if (top.has("segmentation")) {
    const Section seg(top.at("segmentation"), "segmentation",
                      {"abbreviations"});
    if (seg.has("abbreviations")) cfg.abbreviations = seg.strings("abbreviations");
  }

  if (!top.has("ner")) throw top.fail("ner", "is required");
  const Section ner(top.at("ner"), "ner", {"mode", "conll_dir", "gazetteer"});
  if (!ner.has("mode")) throw ner.fail("mode", "is required");
  const std::string mode = ner.string("mode");
  if (mode == "conll") {
    cfg.ner_mode = NerMode::kConll;
    if (!ner.has("conll_dir")) {
      throw ner.fail("conll_dir", "is required when mode is \"conll\"");
    }
    cfg.conll_dir = resolve(ner.string("conll_dir"));
  } else if (mode == "heuristic") {
    cfg.ner_mode = NerMode::kHeuristic;
  } else {
    throw ner.fail("mode", "must be \"conll\" or \"heuristic\"");
  }
  if (ner.has("gazetteer")) cfg.gazetteer = resolve(ner.string("gazetteer"));

  if (top.has("normalize")) {
    const Section norm(top.at("normalize"), "normalize",
                       {"threshold", "policy"});
    if (norm.has("threshold")) {
      if (!norm.at("threshold").is_number()) {
        throw norm.fail("threshold", "must be a number");
      }
      cfg.threshold = norm.at("threshold").get<double>();
      if (!(cfg.threshold > 0.0 && cfg.threshold <= 1.01)) {
        throw norm.fail("threshold", "must be in (0, 1.01]");
      }
    }
    if (norm.has("policy")) {
      const std::string policy = norm.string("policy");
      if (policy == "per_type") {
        cfg.policy = ClusterPolicy::kPerType;
      } else if (policy == "cross_type") {
        cfg.policy = ClusterPolicy::kCrossType;
      } else {
        throw norm.fail("policy", "must be \"per_type\" or \"cross_type\"");
      }
    }
  }

  if (top.has("graph")) {
    const Section graph(top.at("graph"), "graph",
                        {"types", "coref", "min_node_freq", "min_edge_weight",
                         "drop_isolated"});
    if (graph.has("types")) {
      cfg.types.clear();
      for (const auto& name : graph.strings("types")) {
        const auto tag = parse_tag(name);
        if (!tag) throw graph.fail("types", "unknown entity tag \"" + name + "\"");
        cfg.types.insert(*tag);
      }
      if (cfg.types.empty()) throw graph.fail("types", "must not be empty");
    }
    if (graph.has("coref")) {
      const std::string coref = graph.string("coref");
      if (coref == "none") {
        cfg.coref = CorefMode::kNone;
      } else if (coref == "alias") {
        cfg.coref = CorefMode::kAlias;
      } else {
        throw graph.fail("coref", "must be \"none\" or \"alias\"");
      }
    }
    if (graph.has("min_node_freq")) {
      cfg.filter.min_node_freq =
          static_cast<std::size_t>(graph.integer("min_node_freq", 0));
    }
    if (graph.has("min_edge_weight")) {
      cfg.filter.min_edge_weight =
          static_cast<std::size_t>(graph.integer("min_edge_weight", 0));
    }
    if (graph.has("drop_isolated")) {
      if (!graph.at("drop_isolated").is_boolean()) {
        throw graph.fail("drop_isolated", "must be a boolean");
      }
      cfg.filter.drop_isolated = graph.at("drop_isolated").get<bool>();
    }
  }

  if (top.has("temporal")) {
    const Section temporal(top.at("temporal"), "temporal",
                           {"boundaries", "top_terms", "candidate_terms",
                            "term_list", "stoplist"});
    if (temporal.has("boundaries")) {
      const json& b = temporal.at("boundaries");
      if (!b.is_array()) {
        throw temporal.fail("boundaries", "must be an array of years");
      }
      for (const auto& year : b) {
        if (!year.is_number_integer()) {
          throw temporal.fail("boundaries", "must be an array of years");
        }
        cfg.boundaries.push_back(year.get<int>());
      }
      for (std::size_t i = 1; i < cfg.boundaries.size(); ++i) {
        if (cfg.boundaries[i] <= cfg.boundaries[i - 1]) {
          throw temporal.fail("boundaries", "must be strictly ascending");
        }
      }
    }
    if (temporal.has("top_terms")) {
      cfg.top_terms = static_cast<std::size_t>(temporal.integer("top_terms", 1));
    }
    if (temporal.has("candidate_terms")) {
      cfg.candidate_terms =
          static_cast<std::size_t>(temporal.integer("candidate_terms", 1));
    }
    if (temporal.has("term_list")) {
      cfg.term_list = resolve(temporal.string("term_list"));
    }
    if (temporal.has("stoplist")) {
      cfg.stoplist = resolve(temporal.string("stoplist"));
    }
  }

  cfg.output_dir = resolve("out");
  if (top.has("output")) {
    const Section output(top.at("output"), "output", {"dir", "formats"});
    if (output.has("dir")) cfg.output_dir = resolve(output.string("dir"));
    if (output.has("formats")) {
      cfg.formats.clear();
      for (const auto& name : output.strings("formats")) {
        bool found = false;
        for (const auto& [f, names] : kFormats) {
          if (names.first == name) {
            cfg.formats.insert(f);
            found = true;
          }
        }
        if (!found) {
          throw output.fail("formats", "unknown format \"" + name + "\"");
        }
      }
    }
  }
  if (!writable_location(cfg.output_dir)) {
    throw config_error("config \"output.dir\": not writable: " +
                       cfg.output_dir.string());
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot read config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

}  // namespace corpusmap
