#include "support/gexf_check.hpp"

#include <map>
#include <regex>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace corpusmap::testing {
namespace {

namespace pt = boost::property_tree;

const std::regex kInteger(R"([+-]?[0-9]+)");
const std::regex kDecimal(R"([+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)([eE][+-]?[0-9]+)?)");

std::string attr(const pt::ptree& node, const std::string& name,
                 bool* present = nullptr) {
  const auto attrs = node.get_child_optional("<xmlattr>");
  if (attrs) {
    if (const auto v = attrs->get_optional<std::string>(name)) {
      if (present) *present = true;
      return *v;
    }
  }
  if (present) *present = false;
  return {};
}

bool value_matches(const std::string& type, const std::string& value) {
  if (type == "integer" || type == "long") {
    return std::regex_match(value, kInteger);
  }
  if (type == "double" || type == "float") {
    return std::regex_match(value, kDecimal);
  }
  if (type == "boolean") return value == "true" || value == "false";
  return true;
}

}  // namespace

std::vector<std::string> check_gexf(std::string_view document) {
  std::vector<std::string> errors;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(document)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    return {std::string("not well-formed XML: ") + e.what()};
  }

  if (tree.size() != 1 || tree.begin()->first != "gexf") {
    return {"root element must be <gexf>"};
  }
  const pt::ptree& gexf = tree.begin()->second;
  if (attr(gexf, "xmlns") != "http://www.gexf.net/1.2draft") {
    errors.push_back("gexf: wrong or missing namespace");
  }
  if (attr(gexf, "version") != "1.2") {
    errors.push_back("gexf: version must be 1.2");
  }

  const pt::ptree* graph = nullptr;
  for (const auto& [name, child] : gexf) {
    if (name == "<xmlattr>" || name == "<xmlcomment>") continue;
    if (name == "meta" && graph == nullptr) continue;
    if (name == "graph" && graph == nullptr) {
      graph = &child;
      continue;
    }
    errors.push_back("gexf: unexpected element <" + name + ">");
  }
  if (!graph) {
    errors.push_back("gexf: missing <graph>");
    return errors;
  }

  const std::string edge_type = attr(*graph, "defaultedgetype");
  if (edge_type != "directed" && edge_type != "undirected" &&
      edge_type != "mutual") {
    errors.push_back("graph: bad defaultedgetype \"" + edge_type + "\"");
  }
  bool has_mode = false;
  const std::string mode = attr(*graph, "mode", &has_mode);
  if (has_mode && mode != "static" && mode != "dynamic") {
    errors.push_back("graph: bad mode");
  }

  static const std::set<std::string> kTypes = {
      "integer", "long",       "double", "float",
      "boolean", "liststring", "string", "anyURI"};
  std::map<std::string, std::string> node_attr_types;
  std::set<std::string> node_ids;
  std::set<std::string> edge_ids;
  int stage = 0;  // 0 attributes, 1 nodes, 2 edges
  for (const auto& [name, child] : *graph) {
    if (name == "<xmlattr>" || name == "<xmlcomment>") continue;
    if (name == "attributes") {
      if (stage > 0) errors.push_back("graph: <attributes> after nodes/edges");
      const std::string cls = attr(child, "class");
      if (cls != "node" && cls != "edge") {
        errors.push_back("attributes: bad class \"" + cls + "\"");
      }
      for (const auto& [aname, a] : child) {
        if (aname == "<xmlattr>") continue;
        if (aname != "attribute") {
          errors.push_back("attributes: unexpected <" + aname + ">");
          continue;
        }
        bool has_id = false, has_title = false;
        const std::string id = attr(a, "id", &has_id);
        attr(a, "title", &has_title);
        const std::string type = attr(a, "type");
        if (!has_id || !has_title) {
          errors.push_back("attribute: id and title are required");
        }
        if (!kTypes.count(type)) {
          errors.push_back("attribute: bad type \"" + type + "\"");
        }
        if (cls == "node") node_attr_types[id] = type;
      }
    } else if (name == "nodes") {
      if (stage > 1) errors.push_back("graph: <nodes> after <edges>");
      stage = 1;
      for (const auto& [nname, n] : child) {
        if (nname == "<xmlattr>") continue;
        if (nname != "node") {
          errors.push_back("nodes: unexpected <" + nname + ">");
          continue;
        }
        bool has_id = false;
        const std::string id = attr(n, "id", &has_id);
        if (!has_id) errors.push_back("node: missing id");
        if (!node_ids.insert(id).second) {
          errors.push_back("node: duplicate id " + id);
        }
        for (const auto& [cname, c] : n) {
          if (cname == "<xmlattr>") continue;
          if (cname != "attvalues") {
            errors.push_back("node " + id + ": unexpected <" + cname + ">");
            continue;
          }
          for (const auto& [vname, v] : c) {
            if (vname != "attvalue") {
              errors.push_back("attvalues: unexpected <" + vname + ">");
              continue;
            }
            const std::string f = attr(v, "for");
            bool has_value = false;
            const std::string value = attr(v, "value", &has_value);
            const auto decl = node_attr_types.find(f);
            if (decl == node_attr_types.end()) {
              errors.push_back("node " + id + ": attvalue for undeclared " + f);
            } else if (!has_value || !value_matches(decl->second, value)) {
              errors.push_back("node " + id + ": bad " + decl->second +
                               " value \"" + value + "\"");
            }
          }
        }
      }
    } else if (name == "edges") {
      stage = 2;
      for (const auto& [ename, e] : child) {
        if (ename == "<xmlattr>") continue;
        if (ename != "edge") {
          errors.push_back("edges: unexpected <" + ename + ">");
          continue;
        }
        bool has_id = false;
        const std::string id = attr(e, "id", &has_id);
        if (!has_id) errors.push_back("edge: missing id");
        if (!edge_ids.insert(id).second) {
          errors.push_back("edge: duplicate id " + id);
        }
        for (const char* end : {"source", "target"}) {
          if (!node_ids.count(attr(e, end))) {
            errors.push_back("edge " + id + ": " + end + " is not a node");
          }
        }
        bool has_weight = false;
        const std::string weight = attr(e, "weight", &has_weight);
        if (has_weight && !std::regex_match(weight, kDecimal)) {
          errors.push_back("edge " + id + ": weight is not a number");
        }
      }
    } else {
      errors.push_back("graph: unexpected element <" + name + ">");
    }
  }
  return errors;
}

}  // namespace corpusmap::testing
