#include <catch_amalgamated.hpp>

#include <stmwis/instances.hpp>

using namespace stmwis;

TEST_CASE("generators are deterministic") {
  Rng a(99);
  Rng b(99);
  CHECK(serialize_graph(random_graph(20, 0.3, a, 1, 9)) == serialize_graph(random_graph(20, 0.3, b, 1, 9)));
  CHECK(serialize_graph(random_sttt_free(10, 0.4, 1, std::uint64_t{5})) ==
        serialize_graph(random_sttt_free(10, 0.4, 1, std::uint64_t{5})));
}

TEST_CASE("rng ranges") {
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    auto x = r.range(-3, 4);
    CHECK(x >= -3);
    CHECK(x <= 4);
  }
  CHECK_THROWS_AS(r.below(0), std::invalid_argument);
}

TEST_CASE("generated graphs have the requested properties") {
  Rng rng(2);
  for (int i = 0; i < 30; ++i) {
    Graph g = random_sttt_free(static_cast<Vertex>(rng.range(4, 12)), 0.4, 2, rng, {true, 1, 10, 10000});
    CHECK(is_connected(g, g.vertices()));
    CHECK_FALSE(find_induced_sttt(g, 2));
    for (Vertex v : g.vertices()) {
      CHECK(g.weight(v) >= 1);
      CHECK(g.weight(v) <= 10);
    }
    Graph c = random_connected_graph(static_cast<Vertex>(rng.range(1, 20)), 0.3, rng);
    CHECK(is_connected(c, c.vertices()));
  }
  CHECK_THROWS_AS(random_connected_graph(10, 0.0, rng, 1, 1, 5), GeneratorError);
}

TEST_CASE("cographs have no induced P4") {
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    Graph g = cograph(static_cast<Vertex>(rng.range(1, 12)), rng);
    auto n = g.size();
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b)
        for (Vertex c = 0; c < n; ++c)
          for (Vertex d = 0; d < n; ++d) {
            if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
            bool p4 = g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d) && !g.has_edge(a, c) &&
                      !g.has_edge(a, d) && !g.has_edge(b, d);
            CHECK_FALSE(p4);
          }
  }
}

TEST_CASE("decomposed graphs and perturbation stay valid") {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    auto dg = random_decomposed_graph(rng);
    REQUIRE_FALSE(validate_esd(dg.g, dg.esd));
    Esd p = perturb_esd(dg.esd, rng);
    CHECK_FALSE(validate_esd(dg.g, p));
  }
  CHECK_THROWS_AS(line_graph_with_esd(Graph::from_edges(2, {{0, 1}}), {1, 2}), std::invalid_argument);
}
