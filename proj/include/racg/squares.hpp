#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "racg/errors.hpp"
#include "racg/graph.hpp"
#include "racg/vertex_set.hpp"

namespace racg {

// Induced 4-cycle in canonical orientation: cycle[0] is the smallest vertex,
// cycle[1] its smaller neighbor on the square, cycle[2] its diagonal,
// cycle[3] its larger neighbor. Both diagonals come out sorted.
struct Square {
  std::array<int, 4> cycle{-1, -1, -1, -1};

  std::pair<int, int> diagonal_a() const { return {cycle[0], cycle[2]}; }
  std::pair<int, int> diagonal_b() const { return {cycle[1], cycle[3]}; }

  bool contains(int v) const {
    return cycle[0] == v || cycle[1] == v || cycle[2] == v || cycle[3] == v;
  }

  std::array<int, 4> sorted_vertices() const {
    std::array<int, 4> s = cycle;
    std::sort(s.begin(), s.end());
    return s;
  }

  bool operator==(const Square& other) const { return cycle == other.cycle; }
  bool operator<(const Square& other) const { return cycle < other.cycle; }
};

// All induced squares, lexicographically sorted by canonical tuple. Each
// square is generated exactly once from its smallest-vertex diagonal (u, w):
// u < w non-adjacent, and the other diagonal (v, x) is a non-adjacent pair of
// common neighbors with u < v < x.
inline std::vector<Square> enumerate_induced_squares(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<Square> out;
  for (int u = 0; u < n; ++u) {
    for (int w = u + 1; w < n; ++w) {
      if (g.adjacent(u, w)) continue;
      VertexSet common = g.row(u) & g.row(w);
      const std::vector<int> cs = to_indices(common);
      for (std::size_t i = 0; i < cs.size(); ++i) {
        const int v = cs[i];
        if (v < u) continue;  // u must be the square's minimum
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
          const int x = cs[j];
          if (g.adjacent(v, x)) continue;
          out.push_back(Square{{u, v, w, x}});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

enum class ChainMode { share3, diagonal };

namespace detail {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

// Buckets of square indices that are pairwise chained under the given mode.
// share3: squares sharing three vertices (they then share a full triple);
// diagonal: squares sharing a diagonal pair.
inline std::vector<std::vector<int>> chain_buckets(const Graph& g, const std::vector<Square>& squares,
                                                   ChainMode mode) {
  const std::uint64_t n = static_cast<std::uint64_t>(std::max(1, g.vertex_count()));
  std::unordered_map<std::uint64_t, std::vector<int>> buckets;
  for (std::size_t s = 0; s < squares.size(); ++s) {
    if (mode == ChainMode::share3) {
      const std::array<int, 4> vs = squares[s].sorted_vertices();
      for (int omit = 0; omit < 4; ++omit) {
        std::uint64_t key = 0;
        for (int i = 0; i < 4; ++i)
          if (i != omit) key = key * n + static_cast<std::uint64_t>(vs[static_cast<std::size_t>(i)]);
        buckets[key].push_back(static_cast<int>(s));
      }
    } else {
      for (const auto& d : {squares[s].diagonal_a(), squares[s].diagonal_b()}) {
        const std::uint64_t key = static_cast<std::uint64_t>(d.first) * n +
                                  static_cast<std::uint64_t>(d.second);
        buckets[key].push_back(static_cast<int>(s));
      }
    }
  }
  std::vector<std::vector<int>> out;
  out.reserve(buckets.size());
  for (auto& [key, members] : buckets)
    if (members.size() >= 2) out.push_back(std::move(members));
  return out;
}

struct ChainComponents {
  std::vector<int> component_of;  // square index -> component id
  int component_count = 0;
  std::vector<VertexSet> support;  // per component, union of member squares
};

inline ChainComponents chain_components(const Graph& g, const std::vector<Square>& squares,
                                        ChainMode mode) {
  UnionFind uf(squares.size());
  for (const auto& bucket : chain_buckets(g, squares, mode))
    for (std::size_t i = 1; i < bucket.size(); ++i)
      uf.unite(static_cast<std::size_t>(bucket[0]), static_cast<std::size_t>(bucket[i]));
  ChainComponents cc;
  cc.component_of.assign(squares.size(), -1);
  // Components numbered by their smallest square index.
  std::unordered_map<std::size_t, int> id_of_root;
  for (std::size_t s = 0; s < squares.size(); ++s) {
    const std::size_t root = uf.find(s);
    auto [it, fresh] = id_of_root.emplace(root, cc.component_count);
    if (fresh) {
      ++cc.component_count;
      cc.support.push_back(g.empty_set());
    }
    cc.component_of[s] = it->second;
    for (int v : squares[s].cycle) cc.support[static_cast<std::size_t>(it->second)].set(static_cast<std::size_t>(v));
  }
  return cc;
}

}  // namespace detail

// Square chain graph: one node per induced square, edges between squares
// that overlap per the mode. share3 edges are always a subset of diagonal
// edges (three shared vertices contain a diagonal of both squares).
struct SquareChainGraph {
  ChainMode mode = ChainMode::diagonal;
  std::vector<Square> nodes;
  std::vector<std::pair<int, int>> edges;  // node index pairs, u < v, ascending
  std::vector<int> component_of;
  int component_count = 0;
  std::vector<VertexSet> support;
};

inline SquareChainGraph square_chain_graph(const Graph& g, ChainMode mode) {
  SquareChainGraph cg;
  cg.mode = mode;
  cg.nodes = enumerate_induced_squares(g);
  std::vector<std::pair<int, int>> edges;
  for (const auto& bucket : detail::chain_buckets(g, cg.nodes, mode))
    for (std::size_t i = 0; i < bucket.size(); ++i)
      for (std::size_t j = i + 1; j < bucket.size(); ++j)
        edges.emplace_back(std::min(bucket[i], bucket[j]), std::max(bucket[i], bucket[j]));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  cg.edges = std::move(edges);
  detail::ChainComponents cc = detail::chain_components(g, cg.nodes, mode);
  cg.component_of = std::move(cc.component_of);
  cg.component_count = cc.component_count;
  cg.support = std::move(cc.support);
  return cg;
}

// Vertices adjacent to everything else. They join the rest of the graph as
// a clique factor and never lie on an induced square.
inline VertexSet cone_vertices(const Graph& g) {
  const int n = g.vertex_count();
  VertexSet s(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    if (g.degree(v) == n - 1) s.set(static_cast<std::size_t>(v));
  return s;
}

enum class CfsFailure { uncovered_vertex, disconnected_support };

// Verdict for the constructed-from-squares property: after removing cone
// vertices (the maximal clique factor), some single chain component must
// support every remaining vertex.
struct CfsReport {
  bool holds = false;
  ChainMode mode = ChainMode::diagonal;
  VertexSet clique_factor;
  std::optional<int> witness_component;
  std::optional<CfsFailure> failure_reason;
  // Diagnostics.
  int square_count = 0;
  int component_count = 0;
  VertexSet covered;  // union of all component supports
};

inline CfsReport is_cfs(const Graph& g, ChainMode mode = ChainMode::diagonal) {
  if (g.vertex_count() == 0) throw PreconditionError("CFS check on the empty graph");
  CfsReport rep;
  rep.mode = mode;
  rep.clique_factor = cone_vertices(g);
  VertexSet rest = g.full_set() - rep.clique_factor;
  const std::vector<Square> squares = enumerate_induced_squares(g);
  rep.square_count = static_cast<int>(squares.size());
  detail::ChainComponents cc = detail::chain_components(g, squares, mode);
  rep.component_count = cc.component_count;
  rep.covered = g.empty_set();
  for (const auto& sup : cc.support) rep.covered |= sup;
  if (rest.any()) {
    for (int c = 0; c < cc.component_count; ++c)
      if (cc.support[static_cast<std::size_t>(c)] == rest) {
        rep.holds = true;
        rep.witness_component = c;
        break;
      }
  }
  if (!rep.holds)
    rep.failure_reason =
        (rest.any() && rep.covered == rest) ? CfsFailure::disconnected_support : CfsFailure::uncovered_vertex;
  return rep;
}

}  // namespace racg
