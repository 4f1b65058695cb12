#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "oracles.hpp"
#include "racg/gamma.hpp"
#include "racg/join_analysis.hpp"

using racg::Graph;

namespace {

Graph cycle(int k) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i <= k; ++i) names.push_back("p" + std::to_string(i));
  for (int i = 0; i < k; ++i) edges.emplace_back(names[i], names[(i + 1) % k]);
  return racg::build_graph(names, edges);
}

}  // namespace

TEST_CASE("non-adjacent common-join criterion on ladders") {
  const Graph g = racg::build_gamma_n(14);
  const int a1 = g.require_vertex("a1");
  const int a3 = g.require_vertex("a3");
  const int a4 = g.require_vertex("a4");

  const auto w = racg::common_join_nonadjacent(g, a1, a3);
  REQUIRE(w.has_value());
  CHECK(racg::validate_witness(g, *w, a1, a3));
  CHECK(racg::names_of(g, w->side_a) == std::vector<std::string>{"a1", "a3"});
  CHECK(racg::names_of(g, w->side_b) == std::vector<std::string>{"a2", "b2"});

  CHECK_FALSE(racg::common_join_nonadjacent(g, a1, a4).has_value());

  const int a2 = g.require_vertex("a2");
  CHECK_THROWS_AS(racg::common_join_nonadjacent(g, a1, a2), racg::PreconditionError);
  CHECK_THROWS_AS(racg::common_join_nonadjacent(g, a1, a1), racg::PreconditionError);
}

TEST_CASE("cycle glue removes the common joins it must") {
  racg::GammaParams params;
  params.n = 14;
  params.m = 5;
  const Graph g = racg::build_gamma(params);
  CHECK_FALSE(
      racg::common_join_nonadjacent(g, g.require_vertex("a1"), g.require_vertex("a7")).has_value());
  CHECK_FALSE(
      racg::common_join_nonadjacent(g, g.require_vertex("a4"), g.require_vertex("a13")).has_value());
}

TEST_CASE("adjacent pairs can sit inside a common join") {
  const Graph g = racg::build_gamma_n(4);
  const int a1 = g.require_vertex("a1");
  const int a2 = g.require_vertex("a2");
  const auto w = racg::pair_in_common_join(g, a1, a2);
  REQUIRE(w.has_value());
  CHECK(racg::validate_witness(g, *w, a1, a2));

  // level pair through their shared neighbors
  const int b1 = g.require_vertex("b1");
  const auto w2 = racg::pair_in_common_join(g, a1, b1);
  REQUIRE(w2.has_value());
  CHECK(racg::validate_witness(g, *w2, a1, b1));

  const Graph c5 = cycle(5);
  CHECK_FALSE(racg::pair_in_common_join(c5, 0, 1).has_value());
  CHECK_FALSE(racg::pair_in_common_join(c5, 0, 2).has_value());
  CHECK_THROWS_AS(racg::pair_in_common_join(c5, 2, 2), racg::PreconditionError);
}

TEST_CASE("name-based query resolves vertices") {
  const Graph g = racg::build_gamma_n(3);
  CHECK(racg::pair_in_common_join(g, "a1", "a3").has_value());
  CHECK_THROWS_AS(racg::pair_in_common_join(g, "a1", "zz"), racg::GraphError);
}

TEST_CASE("brute-force oracle on fixed graphs") {
  const Graph g4 = racg::build_gamma_n(4);
  CHECK(racg::brute_force_common_join(g4, g4.require_vertex("a1"), g4.require_vertex("a3")));
  CHECK_FALSE(racg::brute_force_common_join(g4, g4.require_vertex("a1"), g4.require_vertex("a4")));

  const Graph c5 = cycle(5);
  CHECK_FALSE(racg::brute_force_common_join(c5, 0, 2));

  const Graph g7 = racg::build_gamma_n(7);  // 14 vertices, above the default cap
  CHECK_THROWS_AS(racg::brute_force_common_join(g7, 0, 2), racg::PreconditionError);
  CHECK(racg::brute_force_common_join(g7, 0, 4, 14));  // explicit cap override
}

TEST_CASE("fast path matches the brute force on all graphs up to five vertices") {
  for (int n = 2; n <= 5; ++n) {
    oracle::for_each_graph(n, [](const Graph& g) {
      for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v) {
          const auto w = racg::pair_in_common_join(g, u, v);
          CHECK(w.has_value() == racg::brute_force_common_join(g, u, v));
          if (w) CHECK(racg::validate_witness(g, *w, u, v));
        }
    });
  }
}

TEST_CASE("fast path matches the brute force on random graphs") {
  int idx = 0;
  for (int n : {7, 8, 9}) {
    for (double p : {0.25, 0.5, 0.75}) {
      for (int r = 0; r < 12; ++r) {
        const Graph g = oracle::random_graph(n, p, 424242, static_cast<std::uint64_t>(idx++));
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v) {
            INFO("n=" << n << " p=" << p << " r=" << r << " pair " << u << "," << v);
            const auto w = racg::pair_in_common_join(g, u, v);
            CHECK(w.has_value() == racg::brute_force_common_join(g, u, v));
            if (w) CHECK(racg::validate_witness(g, *w, u, v));
          }
      }
    }
  }
}

TEST_CASE("both entry points agree on non-adjacent pairs") {
  for (int i = 0; i < 30; ++i) {
    const Graph g = oracle::random_graph(10, 0.45, 55555, static_cast<std::uint64_t>(i));
    for (int u = 0; u < g.vertex_count(); ++u)
      for (int v = u + 1; v < g.vertex_count(); ++v) {
        if (g.adjacent(u, v)) continue;
        const auto w1 = racg::common_join_nonadjacent(g, u, v);
        const auto w2 = racg::pair_in_common_join(g, u, v);
        CHECK(w1.has_value() == w2.has_value());
        if (w1) {
          CHECK(racg::validate_witness(g, *w1, u, v));
          CHECK(racg::validate_witness(g, *w2, u, v));
        }
      }
  }
}

TEST_CASE("returned witnesses are deterministic") {
  const Graph g = oracle::random_graph(12, 0.5, 99, 0);
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v) {
      const auto w1 = racg::pair_in_common_join(g, u, v);
      const auto w2 = racg::pair_in_common_join(g, u, v);
      REQUIRE(w1.has_value() == w2.has_value());
      if (w1) {
        CHECK(w1->side_a == w2->side_a);
        CHECK(w1->side_b == w2->side_b);
        CHECK(w1->nonadjacent_pair_a == w2->nonadjacent_pair_a);
        CHECK(w1->nonadjacent_pair_b == w2->nonadjacent_pair_b);
      }
    }
}

TEST_CASE("validate_witness rejects malformed witnesses") {
  const Graph g = racg::build_gamma_n(3);
  const int a1 = g.require_vertex("a1");
  const int a3 = g.require_vertex("a3");
  auto w = racg::common_join_nonadjacent(g, a1, a3);
  REQUIRE(w.has_value());
  REQUIRE(racg::validate_witness(g, *w, a1, a3));

  SECTION("overlapping sides") {
    racg::JoinWitness bad = *w;
    bad.side_b.set(static_cast<std::size_t>(a1));
    CHECK_FALSE(racg::validate_witness(g, bad, a1, a3));
  }
  SECTION("adjacent recorded pair") {
    racg::JoinWitness bad = *w;
    bad.nonadjacent_pair_b = {g.require_vertex("a2"), g.require_vertex("a3")};
    CHECK_FALSE(racg::validate_witness(g, bad, a1, a3));
  }
  SECTION("query not covered") {
    const int b3 = g.require_vertex("b3");
    CHECK_FALSE(racg::validate_witness(g, *w, a1, b3));
  }
  SECTION("missing cross edge") {
    racg::JoinWitness bad = *w;
    bad.side_b.set(static_cast<std::size_t>(g.require_vertex("b3")));  // b3 not adjacent to a1
    CHECK_FALSE(racg::validate_witness(g, bad, a1, a3));
  }
}
