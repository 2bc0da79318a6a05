#include <catch_amalgamated.hpp>

#include <stmwis/blossom.hpp>
#include <stmwis/instances.hpp>
#include <stmwis/oracles.hpp>

#include "naive_sttt.hpp"

using namespace stmwis;

namespace {

Graph cycle(Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i) e.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  return Graph::from_edges(n, e);
}

// S_{t,t,t}: center 0, leg i is 1+i*t .. t+i*t.
Graph spider(int t) {
  const Vertex n = 3 * t + 1;
  std::vector<Edge> e;
  for (int i = 0; i < 3; ++i) {
    Vertex first = 1 + i * t;
    e.push_back({0, first});
    for (int j = 1; j < t; ++j) e.push_back({first + j - 1, first + j});
  }
  return Graph::from_edges(n, e);
}

}  // namespace

TEST_CASE("mwis_brute frozen values") {
  CHECK(mwis_brute(cycle(5)).weight == 2);
  Graph k3 = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, {5, 1, 1});
  auto s = mwis_brute(k3);
  CHECK(s.weight == 5);
  CHECK(s.vertices == VertexSet{0});
  CHECK(mwis_brute(Graph(4)).weight == 4);
  // C4 has optima {0,2} and {1,3}; the smaller one wins.
  CHECK(mwis_brute(cycle(4)).vertices == VertexSet{0, 2});
  CHECK_THROWS_AS(mwis_brute(Graph(30)), BudgetExceeded);
}

TEST_CASE("mwis_brute dominates any independent set") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    Graph g = random_graph(static_cast<Vertex>(rng.range(0, 12)), 0.35, rng, 0, 10);
    auto s = mwis_brute(g);
    CHECK(is_independent(g, s.vertices));
    CHECK(g.weight_of(s.vertices) == s.weight);
    // Greedy by id is a lower bound.
    VertexSet greedy;
    for (Vertex v = 0; v < g.size(); ++v) {
      bool free = true;
      for (Vertex u : greedy) free = free && !g.has_edge(u, v);
      if (free) greedy.push_back(v);
    }
    CHECK(g.weight_of(greedy) <= s.weight);
  }
}

TEST_CASE("mwm_brute frozen values") {
  MatchingInstance tri{3, {{0, 1, 5}, {1, 2, 3}, {0, 2, 2}}};
  CHECK(mwm_brute(tri).weight == 5);
  MatchingInstance p4{4, {{0, 1, 1}, {1, 2, 5}, {2, 3, 1}}};
  auto m = mwm_brute(p4);
  CHECK(m.weight == 5);
  CHECK(m.edges == std::vector<Edge>{{1, 2}});
  MatchingInstance neg{3, {{0, 1, -1}, {1, 2, -4}}};
  auto z = mwm_brute(neg);
  CHECK(z.weight == 0);
  CHECK(z.edges.empty());

  Graph sq = cycle(4);
  CHECK(mwm_brute(sq, {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 1}, {{0, 3}, 1}}).weight == 2);
  CHECK_THROWS_AS(mwm_brute(MatchingInstance{13, {}}), BudgetExceeded);
}

TEST_CASE("max_weight_matching frozen values") {
  CHECK(max_weight_matching({3, {{0, 1, 5}, {1, 2, 3}, {0, 2, 2}}}).weight == 5);
  CHECK(max_weight_matching({4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}}}).weight == 2);
  CHECK(max_weight_matching({0, {}}).weight == 0);
  CHECK(max_weight_matching({2, {{0, 1, -3}}}).edges.empty());
}

TEST_CASE("max_weight_matching equals mwm_brute") {
  Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    MatchingInstance inst;
    inst.n = static_cast<Vertex>(rng.range(0, 10));
    for (Vertex u = 0; u < inst.n; ++u) {
      for (Vertex v = u + 1; v < inst.n; ++v) {
        if (rng.chance(0.5)) inst.edges.push_back({u, v, rng.range(-10, 10)});
      }
    }
    Matching m = max_weight_matching(inst);
    REQUIRE(m.weight == mwm_brute(inst).weight);
    std::vector<int> used(static_cast<std::size_t>(inst.n), 0);
    Weight sum = 0;
    for (const Edge& e : m.edges) {
      CHECK(++used[e.u] == 1);
      CHECK(++used[e.v] == 1);
      for (const auto& we : inst.edges) {
        if (we.u == e.u && we.v == e.v) {
          CHECK(we.w > 0);
          sum += we.w;
        }
      }
    }
    CHECK(sum == m.weight);
  }
}

TEST_CASE("find_induced_sttt frozen examples") {
  Graph claw = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  auto e = find_induced_sttt(claw, 1);
  REQUIRE(e);
  CHECK(e->center == 0);
  CHECK(verify_sttt(claw, *e, 1));
  CHECK_FALSE(find_induced_sttt(cycle(6), 1));
  Graph s2 = spider(2);
  auto f = find_induced_sttt(s2, 2);
  REQUIRE(f);
  CHECK(verify_sttt(s2, *f, 2));
  CHECK_FALSE(find_induced_sttt(s2, 3));
  CHECK_THROWS_AS(find_induced_sttt(Graph(41), 1), BudgetExceeded);
}

TEST_CASE("find_induced_sttt agrees with the naive enumerator") {
  Rng rng(99);
  for (int i = 0; i < 150; ++i) {
    Graph g = random_graph(static_cast<Vertex>(rng.range(4, 9)), rng.chance(0.5) ? 0.3 : 0.5, rng);
    for (int t : {1, 2}) {
      auto e = find_induced_sttt(g, t);
      CHECK(static_cast<bool>(e) == naive::has_sttt(g, t));
      if (e) {
        CHECK(verify_sttt(g, *e, t));
        VertexSet vs = e->vertex_set();
        CHECK(naive::induces_sttt(g, std::vector<Vertex>(vs.begin(), vs.end()), t));
      }
    }
  }
}

TEST_CASE("S_{t+1} embeddings truncate to S_t embeddings") {
  Rng rng(17);
  for (int i = 0; i < 60; ++i) {
    Graph g = random_graph(12, 0.25, rng);
    auto big = find_induced_sttt(g, 2);
    if (!big) continue;
    StttEmbedding small{big->center, {}};
    for (int k = 0; k < 3; ++k) small.legs[k] = {big->legs[k][0]};
    CHECK(verify_sttt(g, small, 1));
    CHECK(find_induced_sttt(g, 1));
  }
}
