#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "racg/errors.hpp"
#include "racg/graph.hpp"
#include "racg/join_analysis.hpp"
#include "racg/vertex_set.hpp"

namespace racg {

// A requested point set was rejected: the offending pair is recorded, plus
// the join witness when the failure is a common-join violation.
struct CycleSpecError : Error {
  CycleSpecError(const std::string& msg, std::string u_, std::string v_,
                 std::optional<JoinWitness> w = std::nullopt)
      : Error(msg), u(std::move(u_)), v(std::move(v_)), witness(std::move(w)) {}
  std::string u;
  std::string v;
  std::optional<JoinWitness> witness;
};

struct GammaParams {
  int n = 1;
  std::optional<int> m;
  std::optional<std::vector<std::string>> points;
};

// Vertex names a1, b1, a2, b2, ..., an, bn in that order.
inline std::vector<std::string> ladder_vertex_names(int n) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(2 * n));
  for (int i = 1; i <= n; ++i) {
    names.push_back("a" + std::to_string(i));
    names.push_back("b" + std::to_string(i));
  }
  return names;
}

// The base graph on 2n vertices: levels {a_i, b_i} are non-adjacent pairs,
// and consecutive levels are completely joined (four edges each), giving
// 4(n-1) edges in total.
inline Graph build_gamma_n(int n) {
  if (n < 1) throw PreconditionError("gamma_n needs n >= 1");
  std::vector<std::pair<std::string, std::string>> edges;
  edges.reserve(static_cast<std::size_t>(4 * (n - 1)));
  for (int i = 1; i < n; ++i) {
    const std::string ai = "a" + std::to_string(i), bi = "b" + std::to_string(i);
    const std::string aj = "a" + std::to_string(i + 1), bj = "b" + std::to_string(i + 1);
    edges.emplace_back(ai, aj);
    edges.emplace_back(ai, bj);
    edges.emplace_back(bi, aj);
    edges.emplace_back(bi, bj);
  }
  return build_graph(ladder_vertex_names(n), edges);
}

// Default cycle support: a1, a4, a7, ... with spacing 3, which keeps every
// pair of points out of a common join in the base graph. Needs n >= 3m - 2
// so the last point a_{3(m-1)+1} exists.
inline std::vector<std::string> default_point_names(int n, int m) {
  if (m < 5) throw PreconditionError("cycle needs at least 5 points");
  if (n < 3 * m - 2)
    throw PreconditionError("default points need n >= 3m - 2 (got n = " + std::to_string(n) +
                            ", m = " + std::to_string(m) + ")");
  std::vector<std::string> pts;
  pts.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) pts.push_back("a" + std::to_string(3 * k + 1));
  return pts;
}

// Same set as indices into build_gamma_n(n).
inline VertexSet default_points(int n, int m) {
  const Graph base = build_gamma_n(n);
  VertexSet s = base.empty_set();
  for (const auto& nm : default_point_names(n, m)) s.set(static_cast<std::size_t>(base.require_vertex(nm)));
  return s;
}

// Base graph plus an m-cycle glued along a verified point set.
//
// Verification happens twice. Before adding edges, the points must be
// pairwise distinct, pairwise non-adjacent, and no pair may lie in a common
// join of the base graph. After adding the cycle edges, every pair of points
// still non-adjacent in the result must stay out of a common join; a
// violation reports the pair and its join witness.
inline Graph build_gamma(const GammaParams& params) {
  const int n = params.n;
  const Graph base = build_gamma_n(n);

  std::vector<std::string> points;
  if (params.points) {
    points = *params.points;
    if (params.m && static_cast<int>(points.size()) != *params.m)
      throw PreconditionError("m does not match the number of points given");
    if (points.size() < 5) throw PreconditionError("cycle needs at least 5 points");
  } else {
    if (!params.m) throw PreconditionError("need either m or an explicit point list");
    points = default_point_names(n, *params.m);
  }
  const int m = static_cast<int>(points.size());

  std::vector<int> idx;
  idx.reserve(points.size());
  for (const auto& nm : points) idx.push_back(base.require_vertex(nm));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      if (idx[i] == idx[j])
        throw CycleSpecError("cycle point listed twice: " + points[i], points[i], points[j]);
      if (base.adjacent(idx[i], idx[j]))
        throw CycleSpecError(
            "cycle points " + points[i] + ", " + points[j] + " are adjacent in the base graph",
            points[i], points[j]);
      if (auto w = common_join_nonadjacent(base, idx[i], idx[j]))
        throw CycleSpecError("cycle points " + points[i] + ", " + points[j] +
                                 " lie in a common join of the base graph",
                             points[i], points[j], std::move(w));
    }

  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [u, v] : base.edges()) edges.emplace_back(base.name(u), base.name(v));
  for (int k = 0; k < m; ++k) edges.emplace_back(points[k], points[(k + 1) % m]);
  Graph out = build_graph(base.names(), edges);

  // Post-verification on the finished graph.
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      if (out.adjacent(idx[i], idx[j])) continue;  // consecutive on the cycle
      if (auto w = common_join_nonadjacent(out, idx[i], idx[j]))
        throw CycleSpecError("cycle points " + points[i] + ", " + points[j] +
                                 " fell into a common join after adding the cycle",
                             points[i], points[j], std::move(w));
    }
  return out;
}

// Coxeter-style presentation read off a graph: one involution per vertex,
// one commutator per edge.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<std::string> relators;
};

inline Presentation racg_presentation(const Graph& g) {
  Presentation p;
  p.generators = g.names();
  p.relators.reserve(static_cast<std::size_t>(g.vertex_count()) + g.edge_count());
  for (const auto& nm : g.names()) p.relators.push_back(nm + "^2");
  for (const auto& [u, v] : g.edges())
    p.relators.push_back("[" + g.name(u) + "," + g.name(v) + "]");
  return p;
}

inline std::string presentation_text(const Presentation& p) {
  std::string out = "gen:";
  for (const auto& gname : p.generators) {
    out += ' ';
    out += gname;
  }
  out += '\n';
  for (const auto& r : p.relators) {
    out += r;
    out += '\n';
  }
  return out;
}

}  // namespace racg
