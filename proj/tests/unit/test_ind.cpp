#include <catch_amalgamated.hpp>

#include <sstream>

#include <stmwis/ind.hpp>
#include <stmwis/instances.hpp>

using namespace stmwis;

namespace {

IndResult run(const Graph& g, const AlgoConfig& cfg, const Backend& b) {
  Diagnostics diag;
  return ind_solve(g, cfg, b, diag);
}

}  // namespace

TEST_CASE("IND small examples") {
  GyarfasBackend gy;
  auto cfg = AlgoConfig::standard(2);
  CHECK(run(Graph::from_edges(1, {}, {7}), cfg, gy).weight == 7);
  CHECK(run(Graph(5), cfg, gy).weight == 5);
  CHECK(run(Graph(0), cfg, gy).weight == 0);
  Graph k3 = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, {5, 1, 1});
  CHECK(run(k3, cfg, gy).weight == 5);
  Graph c5 = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  CHECK(run(c5, cfg, gy).weight == 2);
}

TEST_CASE("IND agrees with brute force") {
  Rng rng(3);
  GyarfasBackend gy;
  BruteBackend br;
  for (int i = 0; i < 60; ++i) {
    Graph g = random_graph(static_cast<Vertex>(rng.range(1, 11)), 0.35, rng, 1, 10);
    Weight expect = mwis_brute(g).weight;
    for (const auto& cfg : {AlgoConfig::standard(2), AlgoConfig::testing(2)}) {
      auto r = run(g, cfg, gy);
      CHECK(r.weight == expect);
      CHECK(r.stats.node_count(NodeLabel::fallback) == 0);
      CHECK(r.stats.type1_n_not_decreasing == 0);
      CHECK(r.stats.graph_not_shrinking == 0);
      CHECK(r.stats.proved_bound_exceeded == 0);
    }
    CHECK(run(g, AlgoConfig::testing(2), br).weight == expect);
  }
}

TEST_CASE("IND with a decomposition file backend") {
  Rng rng(4);
  auto cfg = AlgoConfig::testing(2);
  for (int i = 0; i < 30; ++i) {
    Graph h = random_graph(static_cast<Vertex>(rng.range(3, 6)), 0.6, rng);
    auto lg = line_graph_with_esd(h, random_weights(static_cast<Vertex>(h.edge_count()), rng, 1, 9));
    FileBackend fb(lg.esd);
    CHECK(run(lg.g, cfg, fb).weight == mwis_brute(lg.g).weight);
  }
}

TEST_CASE("parallel branches give the same answer") {
  Rng rng(5);
  GyarfasBackend gy;
  auto cfg = AlgoConfig::testing(2);
  auto par = cfg;
  par.jobs = 4;
  for (int i = 0; i < 20; ++i) {
    Graph g = random_graph(12, 0.3, rng, 1, 10);
    auto a = run(g, cfg, gy);
    auto b = run(g, par, gy);
    CHECK(a.weight == b.weight);
    CHECK(a.stats.edges == b.stats.edges);
  }
}

TEST_CASE("witness by self-reduction") {
  GyarfasBackend gy;
  auto cfg = AlgoConfig::standard(2);
  Graph k3 = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, {5, 1, 1});
  Diagnostics diag;
  auto solver = [&](const Graph& g) {
    return [&](const VertexSet& alive) { return ind_solve(g, alive, cfg, gy, diag).weight; };
  };
  CHECK(witness_by_self_reduction(k3, solver(k3)) == VertexSet{0});
  Rng rng(6);
  for (int i = 0; i < 30; ++i) {
    Graph g = random_graph(static_cast<Vertex>(rng.range(1, 10)), 0.3, rng, 1, 6);
    VertexSet s = witness_by_self_reduction(g, solver(g));
    CHECK(is_independent(g, s));
    CHECK(g.weight_of(s) == mwis_brute(g).weight);
  }
  auto wrong = [](const VertexSet& s) { return static_cast<Weight>(s.size()) + 1; };
  CHECK_THROWS_AS(witness_by_self_reduction(Graph(2), wrong), std::logic_error);
}

TEST_CASE("recursion stats") {
  RecursionStats leaf;
  leaf.nodes[static_cast<std::size_t>(NodeLabel::base)] = 1;
  RecursionStats mid;
  mid.absorb(leaf, EdgeLabel::success);
  mid.absorb(leaf, EdgeLabel::failure);
  RecursionStats top;
  top.absorb(mid, EdgeLabel::success);
  CHECK(top.node_count(NodeLabel::base) == 2);
  CHECK(top.edge_count(EdgeLabel::success) == 2);
  CHECK(top.path_count(EdgeLabel::success) == 2);
  CHECK(top.path_count(EdgeLabel::failure) == 1);
  CHECK(top.max_depth == 2);
  std::ostringstream out;
  top.write(out);
  CHECK(out.str().find("stat base=2\n") != std::string::npos);
  CHECK(out.str().find("path_max success=2\n") != std::string::npos);

  CHECK(depth_limit_for(4) == 4 * 4 * 2 * 2);
  RecursionStats huge;
  huge.path_max[static_cast<std::size_t>(EdgeLabel::failure)] = 100;
  CHECK(proved_bound_violations(huge, 10, AlgoConfig::standard(2)) == 1);
}
