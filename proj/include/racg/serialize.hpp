#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "racg/certify.hpp"
#include "racg/errors.hpp"
#include "racg/gamma.hpp"
#include "racg/graph.hpp"
#include "racg/join_analysis.hpp"
#include "racg/random_lab.hpp"
#include "racg/squares.hpp"

// JSON views of reports and certificates. Vertex sets are rendered as
// ascending name arrays relative to the graph the report was computed on,
// so the output is stable and humanly diffable.

namespace racg {

inline nlohmann::json vertex_set_json(const Graph& g, const VertexSet& s) {
  return nlohmann::json(names_of(g, s));
}

inline nlohmann::json pair_json(const Graph& g, const std::pair<int, int>& p) {
  return nlohmann::json::array({g.name(p.first), g.name(p.second)});
}

inline nlohmann::json join_witness_json(const Graph& g, const JoinWitness& w) {
  nlohmann::json j;
  j["side_a"] = vertex_set_json(g, w.side_a);
  j["side_b"] = vertex_set_json(g, w.side_b);
  j["nonadjacent_pair_a"] = pair_json(g, w.nonadjacent_pair_a);
  j["nonadjacent_pair_b"] = pair_json(g, w.nonadjacent_pair_b);
  return j;
}

inline nlohmann::json join_decomposition_json(const Graph& g, const JoinDecomposition& d) {
  nlohmann::json j;
  j["is_join"] = d.is_join;
  j["is_nondegenerate_join"] = d.is_nondegenerate_join;
  auto& parts = j["parts"] = nlohmann::json::array();
  for (const auto& p : d.parts) parts.push_back(vertex_set_json(g, p));
  if (d.witness_split) {
    j["witness_split"] = {{"side_a", vertex_set_json(g, d.witness_split->first)},
                          {"side_b", vertex_set_json(g, d.witness_split->second)}};
  }
  return j;
}

inline const char* chain_mode_name(ChainMode m) {
  return m == ChainMode::share3 ? "share3" : "diagonal";
}

inline ChainMode chain_mode_from(std::string_view s) {
  if (s == "share3") return ChainMode::share3;
  if (s == "diagonal") return ChainMode::diagonal;
  throw ParseError("unknown chain mode: " + std::string(s));
}

inline nlohmann::json square_json(const Graph& g, const Square& s) {
  nlohmann::json names = nlohmann::json::array();
  for (int v : s.cycle) names.push_back(g.name(v));
  return names;
}

inline nlohmann::json cfs_report_json(const Graph& g, const CfsReport& r) {
  nlohmann::json j;
  j["holds"] = r.holds;
  j["mode"] = chain_mode_name(r.mode);
  j["clique_factor"] = vertex_set_json(g, r.clique_factor);
  j["square_count"] = r.square_count;
  j["component_count"] = r.component_count;
  if (r.witness_component) j["witness_component"] = *r.witness_component;
  if (r.failure_reason)
    j["failure_reason"] = *r.failure_reason == CfsFailure::uncovered_vertex
                              ? "uncovered_vertex"
                              : "disconnected_support";
  return j;
}

inline nlohmann::json chain_graph_json(const Graph& g, const SquareChainGraph& cg) {
  nlohmann::json j;
  j["mode"] = chain_mode_name(cg.mode);
  auto& nodes = j["squares"] = nlohmann::json::array();
  for (const auto& s : cg.nodes) nodes.push_back(square_json(g, s));
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : cg.edges) edges.push_back({a, b});
  j["component_count"] = cg.component_count;
  j["component_of"] = cg.component_of;
  return j;
}

inline nlohmann::json presentation_json(const Presentation& p) {
  return nlohmann::json{{"generators", p.generators}, {"relators", p.relators}};
}

inline nlohmann::json certificate_json(const WitnessCertificate& c) {
  nlohmann::json j;
  j["schema_version"] = c.schema_version;
  j["cycle"] = c.cycle;
  auto& pairs = j["checked_pairs"] = nlohmann::json::array();
  for (const auto& [a, b] : c.checked_pairs) pairs.push_back({a, b});
  j["graph_hash"] = c.graph_hash;
  return j;
}

inline WitnessCertificate certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("certificate must be a JSON object");
  WitnessCertificate c;
  try {
    c.schema_version = j.at("schema_version").get<int>();
    c.cycle = j.at("cycle").get<std::vector<std::string>>();
    for (const auto& p : j.at("checked_pairs")) {
      if (!p.is_array() || p.size() != 2) throw ParseError("checked pair must be a two-name array");
      c.checked_pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    c.graph_hash = j.at("graph_hash").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
  return c;
}

inline nlohmann::json verification_json(const Graph& g, const VerificationReport& r) {
  nlohmann::json j;
  j["pass"] = r.pass;
  j["reason"] = r.reason;
  if (r.failing_pair) j["failing_pair"] = {r.failing_pair->first, r.failing_pair->second};
  if (r.join_witness) j["join_witness"] = join_witness_json(g, *r.join_witness);
  return j;
}

inline nlohmann::json divergence_report_json(const Graph& g, const DivergenceReport& r) {
  nlohmann::json j;
  j["classification"] = std::string(to_string(r.classification));
  j["graph_digest"] = r.graph_digest;
  j["cone_vertices"] = vertex_set_json(g, r.cone_set);
  if (!r.components.empty()) {
    auto& comps = j["components"] = nlohmann::json::array();
    for (const auto& c : r.components) comps.push_back(vertex_set_json(g, c));
  }
  if (r.join_evidence) j["join_evidence"] = join_decomposition_json(g, *r.join_evidence);
  if (r.cfs_evidence) j["cfs_evidence"] = cfs_report_json(g, *r.cfs_evidence);
  j["citations"] = r.citations;
  return j;
}

inline nlohmann::json flag_json(const Flag& f) {
  nlohmann::json j;
  j["value"] = f.value;
  if (f.value) j["citation"] = f.citation;
  return j;
}

inline nlohmann::json flag_set_json(const FlagSet& f) {
  nlohmann::json j;
  j["not_relatively_hyperbolic"] = flag_json(f.not_relatively_hyperbolic);
  j["stable_one_ended_subgroup"] = flag_json(f.stable_one_ended_subgroup);
  j["morse_boundary_circle"] = flag_json(f.morse_boundary_circle);
  j["not_qi_to_raag"] = flag_json(f.not_qi_to_raag);
  return j;
}

inline nlohmann::json fraction_ci_json(const FractionCI& ci) {
  nlohmann::json j;
  j["count"] = ci.count;
  j["trials"] = ci.trials;
  j["fraction"] = ci.fraction;
  j["ci95_lo"] = ci.lo;
  j["ci95_hi"] = ci.hi;
  return j;
}

inline nlohmann::json experiment_stats_json(const ExperimentStats& st) {
  nlohmann::json j;
  j["n"] = st.n;
  j["p"] = st.p;
  j["trials"] = st.trials;
  j["seed"] = st.seed;
  j["cfs"] = fraction_ci_json(st.cfs);
  j["nondegenerate_join"] = fraction_ci_json(st.join);
  j["stability_witness"] = fraction_ci_json(st.witness);
  j["cfs_not_join"] = fraction_ci_json(st.cfs_not_join);
  nlohmann::json cc = nlohmann::json::object();
  for (const auto& [name, count] : st.classification_counts) cc[name] = count;
  j["classification_counts"] = cc;
  j["total_ms"] = st.total_ms;
  return j;
}

}  // namespace racg
