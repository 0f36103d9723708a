#include "corpusmap/writers.hpp"

#include <sstream>

#include <json.hpp>

#include "corpusmap/error.hpp"

namespace corpusmap {
namespace {

using nlohmann::json;

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string(what) + ": " + e.what());
  }
}

const json& field(const json& obj, const char* key, std::string_view what) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw input_error(std::string(what) + ": missing \"" + key + "\"");
  }
  return obj.at(key);
}

template <typename T>
T get(const json& obj, const char* key, std::string_view what) {
  try {
    return field(obj, key, what).get<T>();
  } catch (const json::type_error&) {
    throw input_error(std::string(what) + ": bad type for \"" + key + "\"");
  }
}

}  // namespace

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\t': out += "&#9;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          out += "\xEF\xBF\xBD";  // not representable in XML 1.0
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string write_gexf(const CoocGraph& graph) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
      << "  <graph defaultedgetype=\"undirected\">\n"
      << "    <attributes class=\"node\">\n"
      << "      <attribute id=\"0\" title=\"type\" type=\"string\"/>\n"
      << "      <attribute id=\"1\" title=\"freq\" type=\"integer\"/>\n"
      << "    </attributes>\n"
      << "    <nodes>\n";
  for (const auto& n : graph.nodes) {
    out << "      <node id=\"" << n.id << "\" label=\"" << xml_escape(n.label)
        << "\">\n"
        << "        <attvalues>\n"
        << "          <attvalue for=\"0\" value=\""
        << xml_escape(join_tags(n.tags)) << "\"/>\n"
        << "          <attvalue for=\"1\" value=\"" << n.freq << "\"/>\n"
        << "        </attvalues>\n"
        << "      </node>\n";
  }
  out << "    </nodes>\n"
      << "    <edges>\n";
  std::size_t edge_id = 0;
  for (const auto& e : graph.edges) {
    out << "      <edge id=\"" << edge_id++ << "\" source=\"" << e.source
        << "\" target=\"" << e.target << "\" weight=\"" << e.weight
        << ".0\"/>\n";
  }
  out << "    </edges>\n"
      << "  </graph>\n"
      << "</gexf>\n";
  return out.str();
}

std::string write_graph_json(const CoocGraph& graph) {
  json nodes = json::array();
  for (const auto& n : graph.nodes) {
    nodes.push_back({{"id", n.id},
                     {"label", n.label},
                     {"type", join_tags(n.tags)},
                     {"freq", n.freq}});
  }
  json edges = json::array();
  for (const auto& e : graph.edges) {
    edges.push_back(
        {{"source", e.source}, {"target", e.target}, {"weight", e.weight}});
  }
  const json root = {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
  return root.dump(2) + "\n";
}

CoocGraph parse_graph_json(std::string_view text) {
  constexpr std::string_view what = "graph json";
  const json root = parse_json(text, what);
  CoocGraph graph;
  const json& nodes = field(root, "nodes", what);
  const json& edges = field(root, "edges", what);
  if (!nodes.is_array() || !edges.is_array()) {
    throw input_error("graph json: nodes and edges must be arrays");
  }
  for (const auto& n : nodes) {
    GraphNode node;
    node.id = get<int>(n, "id", what);
    node.label = get<std::string>(n, "label", what);
    try {
      node.tags = split_tags(get<std::string>(n, "type", what));
    } catch (const Error& e) {
      throw input_error(std::string("graph json: ") + e.what());
    }
    node.freq = get<std::size_t>(n, "freq", what);
    graph.nodes.push_back(std::move(node));
  }
  for (const auto& e : edges) {
    graph.edges.push_back({get<int>(e, "source", what),
                           get<int>(e, "target", what),
                           get<std::size_t>(e, "weight", what)});
  }
  return graph;
}

std::string write_sankey_json(const SankeySpec& spec) {
  json periods = json::array();
  for (const auto& p : spec.periods) {
    periods.push_back({{"id", p.period_id}, {"label", p.label}});
  }
  json nodes = json::array();
  for (const auto& n : spec.nodes) {
    nodes.push_back({{"id", n.id}, {"period", n.period}, {"term", n.term}});
  }
  json links = json::array();
  for (const auto& l : spec.links) {
    links.push_back({{"source", l.source},
                     {"target", l.target},
                     {"value", l.value},
                     {"entities", l.entities}});
  }
  const json root = {{"periods", std::move(periods)},
                     {"nodes", std::move(nodes)},
                     {"links", std::move(links)}};
  return root.dump(2) + "\n";
}

SankeySpec parse_sankey_json(std::string_view text) {
  constexpr std::string_view what = "sankey json";
  const json root = parse_json(text, what);
  SankeySpec spec;
  for (const char* key : {"periods", "nodes", "links"}) {
    if (!field(root, key, what).is_array()) {
      throw input_error(std::string("sankey json: \"") + key +
                        "\" must be an array");
    }
  }
  for (const auto& p : root.at("periods")) {
    Period period;
    period.period_id = get<std::string>(p, "id", what);
    period.label = get<std::string>(p, "label", what);
    spec.periods.push_back(std::move(period));
  }
  for (const auto& n : root.at("nodes")) {
    spec.nodes.push_back({get<std::string>(n, "id", what),
                          get<std::string>(n, "period", what),
                          get<std::string>(n, "term", what)});
  }
  for (const auto& l : root.at("links")) {
    spec.links.push_back({get<std::string>(l, "source", what),
                          get<std::string>(l, "target", what),
                          get<std::size_t>(l, "value", what),
                          get<std::vector<std::string>>(l, "entities", what)});
  }
  return spec;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string write_edges_csv(const CoocGraph& graph) {
  std::string out = "source,target,weight,source_label,target_label\n";
  for (const auto& e : graph.edges) {
    const GraphNode* a = graph.node(e.source);
    const GraphNode* b = graph.node(e.target);
    out += std::to_string(e.source) + "," + std::to_string(e.target) + "," +
           std::to_string(e.weight) + "," + csv_field(a ? a->label : "") +
           "," + csv_field(b ? b->label : "") + "\n";
  }
  return out;
}

std::vector<EdgeRow> parse_edges_csv(std::string_view text) {
  // RFC 4180 records; quoted fields may span lines.
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string cell;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      record.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n') {
      record.push_back(std::move(cell));
      cell.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (quoted) throw input_error("edges csv: unterminated quoted field");
  if (any || !cell.empty() || !record.empty()) {
    record.push_back(std::move(cell));
    records.push_back(std::move(record));
  }

  if (records.empty() ||
      records[0] != std::vector<std::string>{"source", "target", "weight",
                                             "source_label", "target_label"}) {
    throw input_error("edges csv: missing header");
  }
  std::vector<EdgeRow> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != 5) {
      throw input_error("edges csv: record " + std::to_string(r) +
                        " has " + std::to_string(rec.size()) + " fields");
    }
    try {
      rows.push_back({std::stoi(rec[0]), std::stoi(rec[1]),
                      static_cast<std::size_t>(std::stoull(rec[2])), rec[3],
                      rec[4]});
    } catch (const std::logic_error&) {
      throw input_error("edges csv: record " + std::to_string(r) +
                        " has a non-numeric id or weight");
    }
  }
  return rows;
}

}  // namespace corpusmap
