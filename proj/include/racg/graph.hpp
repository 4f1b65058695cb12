#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "racg/errors.hpp"
#include "racg/vertex_set.hpp"

namespace racg {

// Immutable finite simple graph with named vertices.
//
// Vertex order is fixed at construction and drives every iteration in this
// library, so all derived reports are reproducible byte for byte. Adjacency
// lives in packed bit rows: adjacency tests are O(1) and neighbor-set
// operations cost one word op per 64 vertices.
class Graph {
 public:
  Graph() = default;

  // Named-edge constructor. Throws GraphError on empty or duplicate names,
  // unknown endpoints, or self-loops. Parallel edge mentions collapse.
  static Graph build(std::vector<std::string> names,
                     const std::vector<std::pair<std::string, std::string>>& edges) {
    Graph g = skeleton(std::move(names));
    const std::size_t n = g.names_.size();
    g.rows_.assign(n, VertexSet(n));
    for (const auto& [a, b] : edges) {
      const int ia = g.require_vertex(a);
      const int ib = g.require_vertex(b);
      if (ia == ib) throw GraphError("self-loop at vertex: " + a);
      g.rows_[ia].set(ib);
      g.rows_[ib].set(ia);
    }
    g.recount_edges();
    return g;
  }

  // Adjacency-row constructor for internal producers. Rows must be symmetric
  // and irreflexive; both are checked.
  static Graph from_rows(std::vector<std::string> names, std::vector<VertexSet> rows) {
    Graph g = skeleton(std::move(names));
    const std::size_t n = g.names_.size();
    if (rows.size() != n) throw GraphError("row count does not match vertex count");
    for (std::size_t v = 0; v < n; ++v) {
      if (rows[v].size() != n) throw GraphError("row width does not match vertex count");
      if (rows[v].test(v)) throw GraphError("self-loop at vertex: " + g.names_[v]);
    }
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = rows[u].find_first(); v != VertexSet::npos; v = rows[u].find_next(v))
        if (!rows[v].test(u)) throw GraphError("asymmetric adjacency rows");
    g.rows_ = std::move(rows);
    g.recount_edges();
    return g;
  }

  int vertex_count() const { return static_cast<int>(names_.size()); }
  std::size_t edge_count() const { return edge_count_; }

  const std::vector<std::string>& names() const { return names_; }

  const std::string& name(int v) const {
    check_index(v);
    return names_[static_cast<std::size_t>(v)];
  }

  std::optional<int> index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int require_vertex(std::string_view name) const {
    auto idx = index_of(name);
    if (!idx) throw GraphError("unknown vertex: " + std::string(name));
    return *idx;
  }

  bool adjacent(int u, int v) const {
    check_index(u);
    check_index(v);
    return rows_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v));
  }

  int degree(int v) const {
    check_index(v);
    return static_cast<int>(rows_[static_cast<std::size_t>(v)].count());
  }

  // Neighbors of v as a bit row; v itself is never set.
  const VertexSet& row(int v) const {
    check_index(v);
    return rows_[static_cast<std::size_t>(v)];
  }

  VertexSet full_set() const {
    VertexSet s(names_.size());
    s.set();
    return s;
  }

  VertexSet empty_set() const { return VertexSet(names_.size()); }

  // Edges as index pairs (u, v) with u < v, ascending lexicographically.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < names_.size(); ++u)
      for (std::size_t v = rows_[u].find_next(u); v != VertexSet::npos; v = rows_[u].find_next(v))
        out.emplace_back(static_cast<int>(u), static_cast<int>(v));
    return out;
  }

  bool same_graph(const Graph& other) const {
    return names_ == other.names_ && rows_ == other.rows_;
  }

 private:
  static Graph skeleton(std::vector<std::string> names) {
    Graph g;
    g.names_ = std::move(names);
    for (std::size_t i = 0; i < g.names_.size(); ++i) {
      if (g.names_[i].empty()) throw GraphError("empty vertex name");
      if (!g.index_.emplace(g.names_[i], static_cast<int>(i)).second)
        throw GraphError("duplicate vertex name: " + g.names_[i]);
    }
    return g;
  }

  void recount_edges() {
    std::size_t total = 0;
    for (const auto& r : rows_) total += r.count();
    edge_count_ = total / 2;
  }

  void check_index(int v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= names_.size())
      throw GraphError("vertex index out of range: " + std::to_string(v));
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<VertexSet> rows_;
  std::size_t edge_count_ = 0;
};

inline Graph build_graph(std::vector<std::string> names,
                         const std::vector<std::pair<std::string, std::string>>& edges) {
  return Graph::build(std::move(names), edges);
}

inline std::vector<std::string> names_of(const Graph& g, const VertexSet& s) {
  std::vector<std::string> out;
  out.reserve(s.count());
  for (int v : bits(s)) out.push_back(g.name(v));
  return out;
}

// Open neighborhood of v as a set.
inline VertexSet link(const Graph& g, int v) { return g.row(v); }

inline VertexSet link(const Graph& g, std::string_view name) {
  return g.row(g.require_vertex(name));
}

inline Graph complement(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<VertexSet> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    VertexSet r = g.row(v);
    r.flip();
    r.reset(static_cast<std::size_t>(v));
    rows.push_back(std::move(r));
  }
  return Graph::from_rows(g.names(), std::move(rows));
}

// Subgraph induced on the vertices of s, inheriting their relative order
// and names. s must be sized to g's vertex count.
inline Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  if (s.size() != static_cast<std::size_t>(g.vertex_count()))
    throw PreconditionError("vertex set does not match graph size");
  const std::vector<int> keep = to_indices(s);
  const std::size_t k = keep.size();
  std::vector<std::string> names;
  names.reserve(k);
  for (int v : keep) names.push_back(g.name(v));
  std::vector<VertexSet> rows(k, VertexSet(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (g.adjacent(keep[a], keep[b])) {
        rows[a].set(b);
        rows[b].set(a);
      }
  return Graph::from_rows(std::move(names), std::move(rows));
}

// True iff the sequence, read cyclically, is an induced cycle: consecutive
// vertices adjacent, all other pairs non-adjacent. Throws on fewer than
// three vertices, repeats, or out-of-range indices.
inline bool is_induced_cycle(const Graph& g, std::span<const int> cycle) {
  const std::size_t k = cycle.size();
  if (k < 3) throw PreconditionError("cycle needs at least 3 vertices");
  std::unordered_set<int> seen;
  for (int v : cycle) {
    g.name(v);  // bounds check
    if (!seen.insert(v).second) throw GraphError("repeated vertex in cycle: " + g.name(v));
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const bool consecutive = (j == i + 1) || (i == 0 && j == k - 1);
      if (g.adjacent(cycle[i], cycle[j]) != consecutive) return false;
    }
  return true;
}

inline bool is_induced_cycle(const Graph& g, const std::vector<std::string>& cycle) {
  std::vector<int> idx;
  idx.reserve(cycle.size());
  for (const auto& nm : cycle) idx.push_back(g.require_vertex(nm));
  return is_induced_cycle(g, std::span<const int>(idx));
}

// Join structure of a graph, read off the complement's components.
//
// parts      complement components, ordered by smallest member.
// is_join    at least two parts (the graph is the join of them).
// is_nondegenerate_join
//            the parts can be grouped into two sides so that each side
//            contains a non-adjacent pair of the original graph. Equivalent
//            to: at least two parts contain a non-adjacent pair.
// witness_split
//            such a grouping, covering all vertices, when one exists.
struct JoinDecomposition {
  std::vector<VertexSet> parts;
  bool is_join = false;
  bool is_nondegenerate_join = false;
  std::optional<std::pair<VertexSet, VertexSet>> witness_split;
};

namespace detail {

inline bool has_nonadjacent_pair(const Graph& g, const VertexSet& part) {
  const std::vector<int> vs = to_indices(part);
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (!g.adjacent(vs[a], vs[b])) return true;
  return false;
}

}  // namespace detail

inline JoinDecomposition join_decomposition(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) throw PreconditionError("join decomposition of the empty graph");
  JoinDecomposition d;
  VertexSet visited(static_cast<std::size_t>(n));
  for (int start = 0; start < n; ++start) {
    if (visited.test(static_cast<std::size_t>(start))) continue;
    // BFS in the complement without materializing it.
    VertexSet part(static_cast<std::size_t>(n));
    std::vector<int> queue{start};
    part.set(static_cast<std::size_t>(start));
    visited.set(static_cast<std::size_t>(start));
    while (!queue.empty()) {
      const int v = queue.back();
      queue.pop_back();
      VertexSet nb = g.row(v);
      nb.flip();
      nb.reset(static_cast<std::size_t>(v));
      nb -= visited;
      for (int w : bits(nb)) {
        visited.set(static_cast<std::size_t>(w));
        part.set(static_cast<std::size_t>(w));
        queue.push_back(w);
      }
    }
    d.parts.push_back(std::move(part));
  }
  d.is_join = d.parts.size() >= 2;
  std::vector<std::size_t> fat;  // parts containing a non-adjacent pair
  for (std::size_t i = 0; i < d.parts.size(); ++i)
    if (detail::has_nonadjacent_pair(g, d.parts[i])) fat.push_back(i);
  d.is_nondegenerate_join = d.is_join && fat.size() >= 2;
  if (d.is_nondegenerate_join) {
    VertexSet side_a = d.parts[fat.front()];
    VertexSet side_b = g.empty_set();
    for (std::size_t i = 0; i < d.parts.size(); ++i)
      if (i != fat.front()) side_b |= d.parts[i];
    d.witness_split = std::make_pair(std::move(side_a), std::move(side_b));
  }
  return d;
}

// Connected components of the graph itself, ordered by smallest member.
inline std::vector<VertexSet> connected_components(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<VertexSet> comps;
  VertexSet visited(static_cast<std::size_t>(n));
  for (int start = 0; start < n; ++start) {
    if (visited.test(static_cast<std::size_t>(start))) continue;
    VertexSet comp(static_cast<std::size_t>(n));
    std::vector<int> queue{start};
    comp.set(static_cast<std::size_t>(start));
    visited.set(static_cast<std::size_t>(start));
    while (!queue.empty()) {
      const int v = queue.back();
      queue.pop_back();
      VertexSet nb = g.row(v);
      nb -= visited;
      for (int w : bits(nb)) {
        visited.set(static_cast<std::size_t>(w));
        comp.set(static_cast<std::size_t>(w));
        queue.push_back(w);
      }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Canonical serialization: vertex list in graph order (length-prefixed, so
// names cannot collide across boundaries), then edges ascending.
inline std::string canonical_bytes(const Graph& g) {
  std::string out = "racg-graph/1\n";
  for (const auto& nm : g.names()) {
    out += "v ";
    out += std::to_string(nm.size());
    out += ':';
    out += nm;
    out += '\n';
  }
  for (const auto& [u, v] : g.edges()) {
    out += "e ";
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

// 16 hex digits, stable across platforms and runs.
inline std::string graph_digest(const Graph& g) {
  std::uint64_t h = fnv1a64(canonical_bytes(g));
  static const char* hexdigits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hexdigits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace racg
