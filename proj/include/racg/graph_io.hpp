#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "racg/errors.hpp"
#include "racg/graph.hpp"

namespace racg {

enum class GraphFormat { text, json };

// Line format:
//   v NAME
//   e NAME NAME
// '#' starts a comment; blank lines are ignored. Names may not contain
// whitespace or '#'. Vertices must be declared before use.
inline Graph parse_graph_text(std::string_view content) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> edges;
  std::istringstream in{std::string(content)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "v") {
      std::string nm;
      if (!(ls >> nm)) throw ParseError("line " + std::to_string(lineno) + ": v needs a name");
      std::string extra;
      if (ls >> extra) throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
      names.push_back(std::move(nm));
    } else if (kind == "e") {
      std::string x, y;
      if (!(ls >> x >> y)) throw ParseError("line " + std::to_string(lineno) + ": e needs two names");
      std::string extra;
      if (ls >> extra) throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
      edges.emplace_back(std::move(x), std::move(y));
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": expected 'v' or 'e', got '" + kind + "'");
    }
  }
  try {
    return build_graph(std::move(names), edges);
  } catch (const GraphError& e) {
    throw ParseError(std::string("invalid graph: ") + e.what());
  }
}

inline std::string graph_to_text(const Graph& g) {
  std::string out;
  for (const auto& nm : g.names()) {
    out += "v ";
    out += nm;
    out += '\n';
  }
  for (const auto& [u, v] : g.edges()) {
    out += "e ";
    out += g.name(u);
    out += ' ';
    out += g.name(v);
    out += '\n';
  }
  return out;
}

// JSON object {"vertices": [...names], "edges": [[name, name], ...]}.
inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["vertices"] = g.names();
  auto& je = j["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) je.push_back({g.name(u), g.name(v)});
  return j;
}

inline Graph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw ParseError("graph JSON needs 'vertices' and 'edges'");
  std::vector<std::string> names;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_string()) throw ParseError("vertex names must be strings");
    names.push_back(v.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw ParseError("each edge must be a two-name array");
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  try {
    return build_graph(std::move(names), edges);
  } catch (const GraphError& e) {
    throw ParseError(std::string("invalid graph: ") + e.what());
  }
}

inline Graph parse_graph_json(std::string_view content) {
  nlohmann::json j = nlohmann::json::parse(content, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return graph_from_json(j);
}

inline GraphFormat detect_format(std::string_view path) {
  return path.ends_with(".json") ? GraphFormat::json : GraphFormat::text;
}

inline Graph parse_graph(std::string_view content, GraphFormat fmt) {
  return fmt == GraphFormat::json ? parse_graph_json(content) : parse_graph_text(content);
}

inline Graph read_graph_file(const std::string& path, std::optional<GraphFormat> fmt = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str(), fmt.value_or(detect_format(path)));
}

inline void write_graph_file(const Graph& g, const std::string& path,
                             std::optional<GraphFormat> fmt = {}) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write graph file: " + path);
  if (fmt.value_or(detect_format(path)) == GraphFormat::json)
    out << graph_to_json(g).dump(2) << '\n';
  else
    out << graph_to_text(g);
}

// Graphviz rendering of the presentation graph.
inline std::string dot_export(const Graph& g, std::string_view graph_name = "G") {
  std::string out = "graph ";
  out += graph_name;
  out += " {\n";
  for (const auto& nm : g.names()) {
    out += "  \"";
    out += nm;
    out += "\";\n";
  }
  for (const auto& [u, v] : g.edges()) {
    out += "  \"";
    out += g.name(u);
    out += "\" -- \"";
    out += g.name(v);
    out += "\";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace racg
