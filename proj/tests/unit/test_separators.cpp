#include <catch_amalgamated.hpp>

#include <stmwis/decompose.hpp>
#include <stmwis/instances.hpp>
#include <stmwis/separators.hpp>

using namespace stmwis;

namespace {

Graph path_graph(Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph::from_edges(n, e);
}

}  // namespace

TEST_CASE("ilog") {
  CHECK(ilog(1) == 2);
  CHECK(ilog(2) == 2);
  CHECK(ilog(4) == 2);
  CHECK(ilog(5) == 3);
  CHECK(ilog(1024) == 10);
  CHECK(ilog(1025) == 11);
}

TEST_CASE("AlgoConfig") {
  auto p = AlgoConfig::standard(2);
  CHECK(p.ct == 68);
  CHECK(AlgoConfig::standard(2, 100).ct == 100);
  CHECK_NOTHROW(p.check());
  CHECK(p.k_relevant(4) == 32 * 68 * 68 * 4);
  auto t = AlgoConfig::testing(2);
  CHECK(t.k_relevant(4) == 4);
  CHECK(t.separator_depth(4) == 3);  // 2^3 >= 8
  CHECK(t.separator_depth(1) == 3);
  AlgoConfig bad = AlgoConfig::standard(2);
  bad.ct = 10;
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
  for (std::int64_t n : {2, 10, 1000, 1 << 20}) {
    CHECK((static_cast<i128>(1) << p.separator_depth(n)) >= p.k_relevant(n));
    CHECK((static_cast<i128>(1) << t.separator_depth(n)) >= t.k_relevant(n));
  }
}

TEST_CASE("gyarfas path examples") {
  Graph p5 = path_graph(5);
  auto q = gyarfas_path(p5, p5.vertices(), p5.weights());
  CHECK(verify_gyarfas_path(p5, p5.vertices(), p5.weights(), q));
  CHECK(is_induced_path(p5, {0, 1, 2}));
  CHECK_FALSE(is_induced_path(p5, {0, 2}));
  Graph k4 = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK_FALSE(is_induced_path(k4, {0, 1, 2}));
  Graph none(0);
  CHECK(gyarfas_path(none, {}, none.weights()).empty());
  // A single heavy vertex among light ones.
  Graph edgeless = Graph::from_edges(3, {}, {1, 10, 1});
  auto h = gyarfas_path(edgeless, edgeless.vertices(), edgeless.weights());
  CHECK(h == std::vector<Vertex>{1});
}

TEST_CASE("gyarfas path properties") {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    Graph g = random_graph(static_cast<Vertex>(rng.range(1, 40)), 0.15, rng, 1, 10);
    auto q = gyarfas_path(g, g.vertices(), g.weights());
    CHECK(verify_gyarfas_path(g, g.vertices(), g.weights(), q));
  }
  for (int i = 0; i < 50; ++i) {
    Graph g = cograph(static_cast<Vertex>(rng.range(1, 30)), rng, 1, 5);
    auto q = gyarfas_path(g, g.vertices(), g.weights());
    CHECK(verify_gyarfas_path(g, g.vertices(), g.weights(), q));
    CHECK(q.size() <= 3);
  }
}

TEST_CASE("relevant") {
  auto cfg = AlgoConfig::testing(1);
  // Star centre 0 with a long tail: 0-1, 0-2, 2-3-...-9.
  std::vector<Edge> e{{0, 1}, {0, 2}};
  for (Vertex i = 2; i < 9; ++i) e.push_back({i, i + 1});
  Graph g = Graph::from_edges(10, e);
  // k = 16 for N = 10, so the tail 3..9 counts as big.
  CHECK(relevant(g, g.vertices(), {0}, 10, cfg) == VertexSet{2});
  // k = 100 for N = 1000: nothing is big.
  CHECK(relevant(g, g.vertices(), {0}, 1000, cfg).empty());

  Rng rng(10);
  for (int i = 0; i < 100; ++i) {
    Graph r = random_graph(static_cast<Vertex>(rng.range(2, 30)), 0.1, rng);
    VertexSet x{static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(r.size())))};
    VertexSet small_n = relevant(r, r.vertices(), x, r.size(), cfg);
    VertexSet large_n = relevant(r, r.vertices(), x, 4 * r.size(), cfg);
    CHECK(set_is_subset(large_n, small_n));
    CHECK(set_is_subset(small_n, closed_neighborhood(r, x, r.vertices())));
  }
}

TEST_CASE("boosted separators, goodness and case 3") {
  Graph star = Graph::from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  CHECK(is_boosted_bs(star, star.vertices(), {0}, 1));
  CHECK_FALSE(is_boosted_bs(star, star.vertices(), {0, 1}, 1));
  Graph p = path_graph(9);
  CHECK_FALSE(is_boosted_bs(p, p.vertices(), {4}, 1));
  CHECK_THROWS_AS(is_boosted_bs(p, p.vertices(), {}, 0), std::invalid_argument);

  auto cfg = AlgoConfig::testing(1);
  Graph edgeless(10);
  CHECK_FALSE(is_n_good(trivial_esd(edgeless.vertices()), 10, cfg));
  CHECK(is_n_good(component_esd(edgeless, edgeless.vertices()), 10, cfg));

  CHECK(is_case3_separator(star, star.vertices(), {0}, 6, cfg));
  CHECK_FALSE(is_case3_separator(p, p.vertices(), {4}, 9, cfg));
  CHECK(is_case3_separator(p, p.vertices(), {4}, 1000, cfg));
}

TEST_CASE("infer_esd builds a valid decomposition") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    Graph g = random_graph(static_cast<Vertex>(rng.range(1, 20)), 0.15, rng);
    VertexSet x{static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(g.size())))};
    VertexSet rest = set_difference(g.vertices(), closed_neighborhood(g, x, g.vertices()));
    Esd d = infer_esd(g, x, component_esd(g, rest), g.vertices());
    CHECK_FALSE(validate_esd(g, d));
    CHECK(d.alive == g.vertices());
    VertexSet nx = closed_neighborhood(g, x, g.vertices());
    for (const auto& c : components(g, g.vertices())) {
      if (!set_intersects(c, nx)) continue;
      bool own_host = std::any_of(d.vertex_sets.begin(), d.vertex_sets.end(),
                                  [&](const auto& kv) { return kv.second == c; });
      CHECK(own_host);
    }
  }
  Graph g = path_graph(3);
  CHECK_THROWS_AS(infer_esd(g, {}, Esd{}, g.vertices()), std::invalid_argument);
}

TEST_CASE("level sets and branching") {
  Graph p = path_graph(5);
  FList f{{0}, {1}};
  CHECK(level_set(p, p.vertices(), f, 1) == VertexSet{0, 1, 2});
  CHECK(level_set(p, p.vertices(), f, 2) == VertexSet{0, 1});
  CHECK(level_set(p, p.vertices(), f, 3).empty());
  CHECK(is_branchable(p, p.vertices(), 0, 5, f, {}) == 2);
  CHECK(is_branchable(p, p.vertices(), 1, 5, f, {}) == 1);
  CHECK_FALSE(is_branchable(p, p.vertices(), 4, 5, f, {}));
  CHECK_FALSE(is_branchable(p, p.vertices(), 0, 5, {}, {}));
  auto c = level_counts(p, p.vertices(), f);
  CHECK(find_branchable(p, p.vertices(), 5, c, level_counts(p, p.vertices(), {})) == 0);
  CHECK_FALSE(find_branchable(p, {3, 4}, 5, c, c));
}

TEST_CASE("backends satisfy their contracts") {
  Rng rng(13);
  Diagnostics diag;
  GyarfasBackend gy;
  BruteBackend br;
  auto cfg = AlgoConfig::testing(2);
  for (int i = 0; i < 100; ++i) {
    Graph g = random_graph(static_cast<Vertex>(rng.range(1, 14)), 0.3, rng, 1, 10);
    for (const Backend* b : {static_cast<const Backend*>(&gy), static_cast<const Backend*>(&br)}) {
      auto o = verified_decompose(g, g.vertices(), g.weights(), cfg, *b, diag);
      CHECK(o.kind == DecomposeOutcome::Kind::separator_core);
      CHECK_NOTHROW(esd_subroutine(g, g.vertices(), cfg, *b, diag));
    }
  }
  for (int i = 0; i < 50; ++i) {
    Graph h = random_graph(static_cast<Vertex>(rng.range(3, 7)), 0.7, rng);
    auto lg = line_graph_with_esd(h, random_weights(static_cast<Vertex>(h.edge_count()), rng, 1, 5));
    if (lg.g.size() == 0) continue;
    FileBackend fb(lg.esd);
    CHECK_NOTHROW(verified_decompose(lg.g, lg.g.vertices(), lg.g.weights(), cfg, fb, diag));
  }
  CHECK(make_backend("gyarfas")->name() == "gyarfas");
  CHECK(make_backend("brute")->name() == "brute");
  CHECK_THROWS_AS(make_backend("nope"), std::invalid_argument);

  DecomposeOutcome bad = DecomposeOutcome::of_core({});
  Graph one = Graph::from_edges(1, {});
  CHECK(check_decompose_outcome(one, one.vertices(), one.weights(), 2, bad).has_value());
}

TEST_CASE("balanced separator or decomposition") {
  Rng rng(14);
  Diagnostics diag;
  GyarfasBackend gy;
  auto cfg = AlgoConfig::testing(2);
  for (int i = 0; i < 100; ++i) {
    Graph g = random_graph(static_cast<Vertex>(rng.range(1, 30)), 0.1, rng);
    VertexSet a;
    for (Vertex v : g.vertices()) {
      if (rng.chance(0.6)) a.push_back(v);
    }
    std::int64_t k = rng.range(1, 4);
    auto r = balanced_sep_or_esd(g, g.vertices(), a, k, cfg, gy, diag);
    REQUIRE_FALSE(r.is_esd);
    CHECK(is_a_balanced(g, g.vertices(), r.core, a, k));
  }
  for (int i = 0; i < 50; ++i) {
    Graph h = random_graph(static_cast<Vertex>(rng.range(4, 8)), 0.6, rng);
    auto lg = line_graph_with_esd(h);
    if (lg.g.size() < 2) continue;
    FileBackend fb(lg.esd);
    auto r = balanced_sep_or_esd(lg.g, lg.g.vertices(), lg.g.vertices(), 2, cfg, fb, diag);
    if (r.is_esd) {
      CHECK(esd_meets_a_bound(r.esd, lg.g.vertices(), 2));
      CHECK_FALSE(validate_esd(lg.g, r.esd));
    } else {
      CHECK(is_a_balanced(lg.g, lg.g.vertices(), r.core, lg.g.vertices(), 2));
    }
  }
  Graph g = path_graph(4);
  CHECK(balanced_sep_or_esd(g, g.vertices(), {}, 3, cfg, gy, diag).core.empty());
}
