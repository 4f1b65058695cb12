#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "racg/errors.hpp"
#include "racg/graph.hpp"
#include "racg/vertex_set.hpp"

namespace racg {

// A non-degenerate join subgraph exhibiting that a queried pair sits inside
// a common join: side_a and side_b are disjoint, every side_a/side_b pair is
// adjacent, and each side contains the recorded non-adjacent pair.
struct JoinWitness {
  VertexSet side_a;
  VertexSet side_b;
  std::pair<int, int> nonadjacent_pair_a{-1, -1};
  std::pair<int, int> nonadjacent_pair_b{-1, -1};
};

// Checks every clause of the witness against g: sides disjoint and nonempty,
// all cross pairs adjacent, the recorded pairs lie inside their sides and are
// non-adjacent, and {u, v} is covered by the two sides.
inline bool validate_witness(const Graph& g, const JoinWitness& w, int u, int v) {
  const std::size_t n = static_cast<std::size_t>(g.vertex_count());
  if (w.side_a.size() != n || w.side_b.size() != n) return false;
  if (w.side_a.none() || w.side_b.none()) return false;
  if ((w.side_a & w.side_b).any()) return false;
  for (int a : bits(w.side_a))
    for (int b : bits(w.side_b))
      if (!g.adjacent(a, b)) return false;
  auto pair_ok = [&](const std::pair<int, int>& p, const VertexSet& side) {
    if (p.first < 0 || p.second < 0 || p.first == p.second) return false;
    if (static_cast<std::size_t>(p.first) >= n || static_cast<std::size_t>(p.second) >= n)
      return false;
    if (!side.test(static_cast<std::size_t>(p.first)) ||
        !side.test(static_cast<std::size_t>(p.second)))
      return false;
    return !g.adjacent(p.first, p.second);
  };
  if (!pair_ok(w.nonadjacent_pair_a, w.side_a)) return false;
  if (!pair_ok(w.nonadjacent_pair_b, w.side_b)) return false;
  VertexSet both = w.side_a | w.side_b;
  return both.test(static_cast<std::size_t>(u)) && both.test(static_cast<std::size_t>(v));
}

namespace detail {

// First (lexicographically) non-adjacent pair inside s, if any.
inline std::optional<std::pair<int, int>> first_nonadjacent_pair(const Graph& g,
                                                                 const VertexSet& s) {
  const std::vector<int> vs = to_indices(s);
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (!g.adjacent(vs[a], vs[b])) return std::make_pair(vs[a], vs[b]);
  return std::nullopt;
}

// Common-join search for a NON-adjacent pair. For non-adjacent u, v any
// common join puts u and v on the same side (they cannot straddle the split)
// and the other side lies inside link(u) ∩ link(v); conversely {u, v} joined
// to any non-adjacent pair of the common link is itself a witness. So a
// witness exists iff the common link is not a clique.
inline std::optional<JoinWitness> nonadjacent_common_join(const Graph& g, int u, int v) {
  VertexSet common = g.row(u) & g.row(v);
  auto pair_b = first_nonadjacent_pair(g, common);
  if (!pair_b) return std::nullopt;
  JoinWitness w;
  w.side_a = g.empty_set();
  w.side_a.set(static_cast<std::size_t>(u));
  w.side_a.set(static_cast<std::size_t>(v));
  w.side_b = g.empty_set();
  w.side_b.set(static_cast<std::size_t>(pair_b->first));
  w.side_b.set(static_cast<std::size_t>(pair_b->second));
  w.nonadjacent_pair_a = {std::min(u, v), std::max(u, v)};
  w.nonadjacent_pair_b = *pair_b;
  return w;
}

// Common-join search for an ADJACENT pair u ~ v. A minimal witness needs at
// most three vertices per side: given any witness, shrink each side to the
// queried vertex it contains (if any) plus one non-adjacent pair; the cross
// edges survive shrinking. That leaves five shapes, enumerated smallest
// first, each scanned in ascending vertex order, so the returned witness is
// deterministic.
inline std::optional<JoinWitness> adjacent_common_join(const Graph& g, int u, int v) {
  const int n = g.vertex_count();
  auto in = [&](std::initializer_list<int> xs, int y) {
    for (int x : xs)
      if (x == y) return true;
    return false;
  };
  auto make = [&](std::initializer_list<int> sa, std::pair<int, int> pa,
                  std::initializer_list<int> sb, std::pair<int, int> pb) {
    JoinWitness w;
    w.side_a = g.empty_set();
    for (int x : sa) w.side_a.set(static_cast<std::size_t>(x));
    w.side_b = g.empty_set();
    for (int x : sb) w.side_b.set(static_cast<std::size_t>(x));
    w.nonadjacent_pair_a = pa;
    w.nonadjacent_pair_b = pb;
    return w;
  };
  auto sorted = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };

  // Shape 1: {u, a} | {v, b} with a ≁ u and b ≁ v.
  for (int a = 0; a < n; ++a) {
    if (a == u || a == v || g.adjacent(a, u)) continue;
    if (!g.adjacent(a, v)) continue;  // cross edge a ~ v required
    for (int b = 0; b < n; ++b) {
      if (b == u || b == v || b == a || g.adjacent(b, v)) continue;
      if (g.adjacent(u, b) && g.adjacent(a, b))
        return make({u, a}, sorted(u, a), {v, b}, sorted(v, b));
    }
  }
  // Shape 2: {u, a} | {v, r, s} with a ≁ u and r ≁ s.
  for (int a = 0; a < n; ++a) {
    if (a == u || a == v || g.adjacent(a, u)) continue;
    if (!g.adjacent(a, v)) continue;
    for (int r = 0; r < n; ++r) {
      if (in({u, v, a}, r)) continue;
      if (!g.adjacent(u, r) || !g.adjacent(a, r)) continue;
      for (int s = r + 1; s < n; ++s) {
        if (in({u, v, a}, s) || g.adjacent(r, s)) continue;
        if (g.adjacent(u, s) && g.adjacent(a, s))
          return make({u, a}, sorted(u, a), {v, r, s}, {r, s});
      }
    }
  }
  // Shape 3: {u, p, q} | {v, b} with p ≁ q and b ≁ v.
  for (int b = 0; b < n; ++b) {
    if (b == u || b == v || g.adjacent(b, v)) continue;
    if (!g.adjacent(b, u)) continue;
    for (int p = 0; p < n; ++p) {
      if (in({u, v, b}, p)) continue;
      if (!g.adjacent(v, p) || !g.adjacent(b, p)) continue;
      for (int q = p + 1; q < n; ++q) {
        if (in({u, v, b}, q) || g.adjacent(p, q)) continue;
        if (g.adjacent(v, q) && g.adjacent(b, q))
          return make({u, p, q}, {p, q}, {v, b}, sorted(v, b));
      }
    }
  }
  // Shape 4: {u, v, z} | {r, s} with z non-adjacent to u or to v, r ≁ s.
  for (int z = 0; z < n; ++z) {
    if (z == u || z == v) continue;
    const bool zu = !g.adjacent(z, u);
    const bool zv = !g.adjacent(z, v);
    if (!zu && !zv) continue;
    for (int r = 0; r < n; ++r) {
      if (in({u, v, z}, r)) continue;
      if (!g.adjacent(u, r) || !g.adjacent(v, r) || !g.adjacent(z, r)) continue;
      for (int s = r + 1; s < n; ++s) {
        if (in({u, v, z}, s) || g.adjacent(r, s)) continue;
        if (g.adjacent(u, s) && g.adjacent(v, s) && g.adjacent(z, s))
          return make({u, v, z}, zu ? sorted(u, z) : sorted(v, z), {r, s}, {r, s});
      }
    }
  }
  // Shape 5: {u, p, q} | {v, r, s} with p ≁ q and r ≁ s.
  for (int p = 0; p < n; ++p) {
    if (in({u, v}, p) || !g.adjacent(v, p)) continue;
    for (int q = p + 1; q < n; ++q) {
      if (in({u, v}, q) || g.adjacent(p, q) || !g.adjacent(v, q)) continue;
      for (int r = 0; r < n; ++r) {
        if (in({u, v, p, q}, r)) continue;
        if (!g.adjacent(u, r) || !g.adjacent(p, r) || !g.adjacent(q, r)) continue;
        for (int s = r + 1; s < n; ++s) {
          if (in({u, v, p, q}, s) || g.adjacent(r, s)) continue;
          if (g.adjacent(u, s) && g.adjacent(p, s) && g.adjacent(q, s))
            return make({u, p, q}, {p, q}, {v, r, s}, {r, s});
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Does some non-degenerate join subgraph contain both u and v on the same
// side, with the other side drawn from their common link? Only defined for
// non-adjacent pairs; throws PreconditionError otherwise.
inline std::optional<JoinWitness> common_join_nonadjacent(const Graph& g, int u, int v) {
  if (u == v) throw PreconditionError("common join query needs two distinct vertices");
  g.name(u);
  g.name(v);
  if (g.adjacent(u, v))
    throw PreconditionError("common_join_nonadjacent expects a non-adjacent pair");
  return detail::nonadjacent_common_join(g, u, v);
}

// Is there a non-degenerate join subgraph of g containing both u and v?
// Handles adjacent and non-adjacent pairs; the returned witness always
// validates. Deterministic: the same graph and pair yield the same witness.
inline std::optional<JoinWitness> pair_in_common_join(const Graph& g, int u, int v) {
  if (u == v) throw PreconditionError("common join query needs two distinct vertices");
  g.name(u);
  g.name(v);
  if (!g.adjacent(u, v)) return detail::nonadjacent_common_join(g, u, v);
  return detail::adjacent_common_join(g, u, v);
}

inline std::optional<JoinWitness> pair_in_common_join(const Graph& g, std::string_view u,
                                                      std::string_view v) {
  return pair_in_common_join(g, g.require_vertex(u), g.require_vertex(v));
}

// Reference oracle: enumerate every assignment of vertices to {out, side A,
// side B} and accept if u, v are placed, both sides hold a non-adjacent
// pair, and all cross pairs are adjacent. Exponential (3^n); refuses graphs
// above vertex_cap.
inline bool brute_force_common_join(const Graph& g, int u, int v, int vertex_cap = 12) {
  if (u == v) throw PreconditionError("common join query needs two distinct vertices");
  g.name(u);
  g.name(v);
  const int n = g.vertex_count();
  if (n > vertex_cap) throw PreconditionError("graph exceeds brute-force vertex cap");
  std::vector<int> assign(static_cast<std::size_t>(n), 0);  // 0 out, 1 side A, 2 side B
  std::vector<int> a, b;
  a.reserve(static_cast<std::size_t>(n));
  b.reserve(static_cast<std::size_t>(n));
  while (true) {
    if (assign[static_cast<std::size_t>(u)] != 0 && assign[static_cast<std::size_t>(v)] != 0) {
      a.clear();
      b.clear();
      for (int i = 0; i < n; ++i) {
        if (assign[static_cast<std::size_t>(i)] == 1) a.push_back(i);
        if (assign[static_cast<std::size_t>(i)] == 2) b.push_back(i);
      }
      bool ok = !a.empty() && !b.empty();
      for (std::size_t i = 0; ok && i < a.size(); ++i)
        for (std::size_t j = 0; ok && j < b.size(); ++j)
          if (!g.adjacent(a[i], b[j])) ok = false;
      auto has_gap = [&](const std::vector<int>& side) {
        for (std::size_t i = 0; i < side.size(); ++i)
          for (std::size_t j = i + 1; j < side.size(); ++j)
            if (!g.adjacent(side[i], side[j])) return true;
        return false;
      };
      if (ok && has_gap(a) && has_gap(b)) return true;
    }
    // next ternary assignment
    int pos = 0;
    while (pos < n && assign[static_cast<std::size_t>(pos)] == 2) {
      assign[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == n) return false;
    ++assign[static_cast<std::size_t>(pos)];
  }
}

}  // namespace racg
