#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "racg/errors.hpp"
#include "racg/graph.hpp"
#include "racg/join_analysis.hpp"
#include "racg/squares.hpp"
#include "racg/vertex_set.hpp"

namespace racg {

// Citation anchors attached to reports and flags. Each states the result the
// code is relying on, so a reader can audit the chain of implications.
namespace cite {
inline constexpr std::string_view finite_clique =
    "complete presentation graph: all generators commute pairwise, so the group is (Z/2)^n, "
    "which is finite";
inline constexpr std::string_view multi_ended =
    "disconnected presentation graph: the group is a free product of the component groups, "
    "hence has more than one end";
inline constexpr std::string_view linear_join =
    "after removing the clique factor the graph is a non-degenerate join, so the group is a "
    "direct product of two infinite subgroups and divergence is linear";
inline constexpr std::string_view quadratic_cfs =
    "CFS and not a non-degenerate join forces exactly quadratic divergence "
    "(Dani-Thomas, Divergence in right-angled Coxeter groups, Theorem 1.1; "
    "Behrstock-Falgas-Ravry-Hagen-Susse, Proposition 3.1)";
inline constexpr std::string_view not_rel_hyp =
    "a group hyperbolic relative to proper subgroups has at least exponential divergence "
    "(Sisto), so linear or quadratic divergence rules relative hyperbolicity out";
inline constexpr std::string_view stable_subgroup =
    "an induced cycle of length >= 5 none of whose non-adjacent vertex pairs lies in a common "
    "non-degenerate join spans a one-ended stable subgroup (quasi-convexity via bounded "
    "projections, in the sense of Durham-Taylor stability)";
inline constexpr std::string_view morse_circle =
    "a stable one-ended hyperbolic subgroup contributes a topologically embedded circle to the "
    "Morse boundary (Cordes, Morse boundaries of proper geodesic spaces)";
inline constexpr std::string_view not_qi_raag =
    "the Morse boundary is a quasi-isometry invariant and right-angled Artin groups have "
    "totally disconnected Morse boundary (Charney-Sultan contracting boundaries), so a circle "
    "in the boundary obstructs quasi-isometry to any RAAG";
}  // namespace cite

// Checkable evidence that a cycle yields a stable subgroup: the cycle is
// induced, and every listed non-adjacent pair avoids common joins. The hash
// pins the certificate to one graph.
struct WitnessCertificate {
  int schema_version = 1;
  std::vector<std::string> cycle;
  std::vector<std::pair<std::string, std::string>> checked_pairs;
  std::string graph_hash;
};

struct VerificationReport {
  bool pass = false;
  std::string reason;
  std::optional<std::pair<std::string, std::string>> failing_pair;
  std::optional<JoinWitness> join_witness;  // when a checked pair fails
};

namespace detail {

// Non-adjacent cyclic pairs of the cycle, in canonical order: for each i < j,
// skip consecutive positions (including the wrap-around).
inline std::vector<std::pair<int, int>> cycle_gap_pairs(std::span<const int> cyc) {
  std::vector<std::pair<int, int>> out;
  const std::size_t k = cyc.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const bool consecutive = (j == i + 1) || (i == 0 && j == k - 1);
      if (!consecutive) out.emplace_back(cyc[i], cyc[j]);
    }
  return out;
}

}  // namespace detail

// Re-derives every claim of the certificate against g. Fails (rather than
// throws) when the cycle is not induced, too short, or some pair lies in a
// common join; throws StaleCertificateError when the hash pins a different
// graph, and GraphError when the certificate mentions unknown vertices.
inline VerificationReport verify_certificate(const Graph& g, const WitnessCertificate& cert) {
  if (cert.graph_hash != graph_digest(g))
    throw StaleCertificateError("certificate was issued for a different graph (hash " +
                                cert.graph_hash + ", graph is " + graph_digest(g) + ")");
  VerificationReport rep;
  if (cert.schema_version != 1) {
    rep.reason = "unsupported schema version " + std::to_string(cert.schema_version);
    return rep;
  }
  if (cert.cycle.size() < 5) {
    rep.reason = "cycle has fewer than 5 vertices";
    return rep;
  }
  std::vector<int> idx;
  idx.reserve(cert.cycle.size());
  for (const auto& nm : cert.cycle) idx.push_back(g.require_vertex(nm));
  if (!is_induced_cycle(g, std::span<const int>(idx))) {
    rep.reason = "cycle is not an induced cycle";
    return rep;
  }
  // The checked pairs must be exactly the non-adjacent cyclic pairs.
  std::vector<std::pair<std::string, std::string>> expected;
  for (const auto& [u, v] : detail::cycle_gap_pairs(idx)) expected.emplace_back(g.name(u), g.name(v));
  auto canon = [](std::vector<std::pair<std::string, std::string>> ps) {
    for (auto& p : ps)
      if (p.second < p.first) std::swap(p.first, p.second);
    std::sort(ps.begin(), ps.end());
    return ps;
  };
  if (canon(cert.checked_pairs) != canon(expected)) {
    rep.reason = "checked pairs do not match the cycle's non-adjacent pairs";
    return rep;
  }
  for (const auto& [u, v] : detail::cycle_gap_pairs(idx)) {
    if (auto w = common_join_nonadjacent(g, u, v)) {
      rep.reason = "pair lies in a common join";
      rep.failing_pair = std::make_pair(g.name(u), g.name(v));
      rep.join_witness = std::move(w);
      return rep;
    }
  }
  rep.pass = true;
  rep.reason = "ok";
  return rep;
}

struct WitnessSearchResult {
  std::optional<WitnessCertificate> certificate;
  // The budget never cut the search off. With no certificate present this
  // means the whole space was swept, so the negative answer is conclusive.
  bool exhausted = false;
  std::uint64_t expansions = 0;  // path extensions performed
};

inline constexpr std::uint64_t kDefaultWitnessBudget = 100000;

namespace detail {

// Lazily cached common-join verdicts for non-adjacent pairs.
class JoinCache {
 public:
  explicit JoinCache(const Graph& g)
      : g_(&g), cache_(static_cast<std::size_t>(g.vertex_count()) *
                           static_cast<std::size_t>(g.vertex_count()),
                       -1) {}

  bool in_common_join(int u, int v) {
    const std::size_t k = key(u, v);
    if (cache_[k] < 0)
      cache_[k] = detail::nonadjacent_common_join(*g_, u, v).has_value() ? 1 : 0;
    return cache_[k] == 1;
  }

 private:
  std::size_t key(int u, int v) const {
    const auto n = static_cast<std::size_t>(g_->vertex_count());
    return static_cast<std::size_t>(std::min(u, v)) * n + static_cast<std::size_t>(std::max(u, v));
  }
  const Graph* g_;
  std::vector<signed char> cache_;
};

struct CycleSearch {
  const Graph& g;
  int min_len;
  std::uint64_t budget;
  JoinCache joins;
  std::vector<int> path;
  VertexSet on_path;
  std::uint64_t expansions = 0;
  bool budget_hit = false;
  std::optional<std::vector<int>> found;

  CycleSearch(const Graph& graph, int min_length, std::uint64_t b)
      : g(graph), min_len(min_length), budget(b), joins(graph), on_path(graph.empty_set()) {}

  // Grow simple induced paths from start s, all vertices > s except s itself;
  // close a cycle back at s once long enough. Every non-adjacent pair of the
  // final cycle is checked against the join cache before it can enter the
  // path, so an emitted cycle needs no re-checking.
  void extend() {
    if (found || budget_hit) return;
    const std::size_t k = path.size();
    const int s = path[0];
    VertexSet cand = g.row(path[k - 1]);
    for (int w : bits(cand)) {
      if (found || budget_hit) return;
      if (w <= s || on_path.test(static_cast<std::size_t>(w))) continue;
      bool induced = true;
      for (std::size_t i = 1; i + 1 < k && induced; ++i)
        if (g.adjacent(w, path[i])) induced = false;
      if (!induced) continue;
      const bool closes = k >= 2 && g.adjacent(w, s);
      if (closes) {
        if (k + 1 < static_cast<std::size_t>(min_len)) continue;
        bool clean = true;
        for (std::size_t i = 1; i + 1 < k && clean; ++i)
          if (joins.in_common_join(w, path[i])) clean = false;
        if (clean) {
          std::vector<int> cyc = path;
          cyc.push_back(w);
          found = std::move(cyc);
          return;
        }
        continue;
      }
      // Interior extension: w is non-adjacent to path[0..k-2]; all those
      // pairs must stay out of common joins for the cycle to certify.
      bool clean = true;
      for (std::size_t i = 0; i + 1 < k && clean; ++i)
        if (joins.in_common_join(w, path[i])) clean = false;
      if (!clean) continue;
      if (expansions >= budget) {
        budget_hit = true;
        return;
      }
      ++expansions;
      path.push_back(w);
      on_path.set(static_cast<std::size_t>(w));
      extend();
      path.pop_back();
      on_path.reset(static_cast<std::size_t>(w));
    }
  }
};

}  // namespace detail

// Deterministic search for an induced cycle of length >= min_len whose
// non-adjacent pairs all avoid common joins. Starts are tried in ascending
// vertex order and each cycle is explored from its smallest vertex, so the
// same graph and budget always produce the same certificate. The budget
// counts path extensions; exhausted means the whole space was swept.
inline WitnessSearchResult find_stable_cycle(const Graph& g, int min_len = 5,
                                             std::uint64_t budget = kDefaultWitnessBudget) {
  if (min_len < 5) throw PreconditionError("stability needs cycle length >= 5");
  WitnessSearchResult res;
  detail::CycleSearch search(g, min_len, budget);
  for (int s = 0; s < g.vertex_count() && !search.found && !search.budget_hit; ++s) {
    search.path.assign(1, s);
    search.on_path = g.empty_set();
    search.on_path.set(static_cast<std::size_t>(s));
    search.extend();
  }
  res.expansions = search.expansions;
  res.exhausted = !search.budget_hit;
  if (search.found) {
    WitnessCertificate cert;
    for (int v : *search.found) cert.cycle.push_back(g.name(v));
    for (const auto& [u, v] : detail::cycle_gap_pairs(*search.found))
      cert.checked_pairs.emplace_back(g.name(u), g.name(v));
    cert.graph_hash = graph_digest(g);
    res.certificate = std::move(cert);
  }
  return res;
}

enum class Classification { finite, multi_ended, linear, quadratic, unclassified };

inline std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::finite: return "finite";
    case Classification::multi_ended: return "multi_ended";
    case Classification::linear: return "linear";
    case Classification::quadratic: return "quadratic";
    case Classification::unclassified: return "unclassified";
  }
  return "unclassified";
}

// Divergence verdict plus the evidence that produced it. All vertex sets are
// relative to the classified graph; the digest pins the report to it.
struct DivergenceReport {
  Classification classification = Classification::unclassified;
  std::string graph_digest;
  VertexSet cone_set;                                // stripped clique factor
  std::vector<VertexSet> components;                 // evidence for multi_ended
  std::optional<JoinDecomposition> join_evidence;    // of the cone-stripped core, in g's indices
  std::optional<CfsReport> cfs_evidence;             // for quadratic / unclassified
  std::vector<std::string> citations;
};

// Decision ladder: complete graph -> finite; disconnected -> more than one
// end; cone-stripped core a non-degenerate join -> linear; CFS (diagonal
// chaining) -> quadratic; otherwise unclassified. Each positive verdict
// attaches its evidence and citation.
inline DivergenceReport classify_divergence(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) throw PreconditionError("classification of the empty graph");
  DivergenceReport rep;
  rep.graph_digest = racg::graph_digest(g);
  rep.cone_set = cone_vertices(g);

  if (static_cast<int>(rep.cone_set.count()) == n) {
    rep.classification = Classification::finite;
    rep.citations.emplace_back(cite::finite_clique);
    return rep;
  }
  std::vector<VertexSet> comps = connected_components(g);
  if (comps.size() >= 2) {
    rep.classification = Classification::multi_ended;
    rep.components = std::move(comps);
    rep.citations.emplace_back(cite::multi_ended);
    return rep;
  }
  // Strip the clique factor, decompose the core, and map the parts back to
  // g's vertex indices.
  const VertexSet core_set = g.full_set() - rep.cone_set;
  const Graph core = induced_subgraph(g, core_set);
  const std::vector<int> core_to_g = to_indices(core_set);
  JoinDecomposition jd = join_decomposition(core);
  auto remap = [&](const VertexSet& s) {
    VertexSet out = g.empty_set();
    for (int v : bits(s)) out.set(static_cast<std::size_t>(core_to_g[static_cast<std::size_t>(v)]));
    return out;
  };
  JoinDecomposition mapped;
  mapped.is_join = jd.is_join;
  mapped.is_nondegenerate_join = jd.is_nondegenerate_join;
  for (const auto& p : jd.parts) mapped.parts.push_back(remap(p));
  if (jd.witness_split)
    mapped.witness_split = std::make_pair(remap(jd.witness_split->first), remap(jd.witness_split->second));
  rep.join_evidence = std::move(mapped);

  if (rep.join_evidence->is_nondegenerate_join) {
    rep.classification = Classification::linear;
    rep.citations.emplace_back(cite::linear_join);
    return rep;
  }
  CfsReport cfs = is_cfs(g, ChainMode::diagonal);
  rep.cfs_evidence = std::move(cfs);
  if (rep.cfs_evidence->holds) {
    rep.classification = Classification::quadratic;
    rep.citations.emplace_back(cite::quadratic_cfs);
    return rep;
  }
  rep.classification = Classification::unclassified;
  return rep;
}

struct Flag {
  bool value = false;
  std::string citation;
};

// Consequences read off a classification plus (optionally) a stability
// certificate. Monotone: a certificate never removes a flag.
struct FlagSet {
  Flag not_relatively_hyperbolic;
  Flag stable_one_ended_subgroup;
  Flag morse_boundary_circle;
  Flag not_qi_to_raag;
};

// cert, when given, must be pinned to the same graph as the report.
inline FlagSet derived_flags(const DivergenceReport& report,
                             const WitnessCertificate* cert = nullptr) {
  if (cert && cert->graph_hash != report.graph_digest)
    throw StaleCertificateError("certificate and report pin different graphs");
  FlagSet f;
  if (report.classification == Classification::linear ||
      report.classification == Classification::quadratic) {
    f.not_relatively_hyperbolic = {true, std::string(cite::not_rel_hyp)};
  }
  if (cert) {
    f.stable_one_ended_subgroup = {true, std::string(cite::stable_subgroup)};
    f.morse_boundary_circle = {true, std::string(cite::morse_circle)};
    f.not_qi_to_raag = {true, std::string(cite::not_qi_raag)};
  }
  return f;
}

}  // namespace racg
