#include <catch_amalgamated.hpp>

#include <stmwis/instances.hpp>
#include <stmwis/oracles.hpp>
#include <stmwis/particle_solve.hpp>

using namespace stmwis;

namespace {

Weight brute_on(const Graph& g, const VertexSet& s) { return mwis_brute(g, s).weight; }

std::map<Edge, Weight> edge_weight_map(const Graph& h, const std::vector<Weight>& w) {
  std::map<Edge, Weight> out;
  auto he = h.edges();
  for (std::size_t i = 0; i < he.size(); ++i) out[he[i]] = w[i];
  return out;
}

}  // namespace

TEST_CASE("particle combination on small line graphs") {
  // L(K_{1,3}) is a triangle: one edge of the claw.
  Graph claw = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  auto lc = line_graph_with_esd(claw);
  CHECK(mwis_from_particles_with(lc.esd, [&](const VertexSet& s) { return brute_on(lc.g, s); }) == 1);

  // L(P4) is P3 with weights 1, 5, 1: the middle edge wins.
  Graph p4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  auto lp = line_graph_with_esd(p4, {1, 5, 1});
  CHECK(mwis_from_particles_with(lp.esd, [&](const VertexSet& s) { return brute_on(lp.g, s); }) == 5);
  auto lq = line_graph_with_esd(p4, {3, 5, 3});
  CHECK(mwis_from_particles_with(lq.esd, [&](const VertexSet& s) { return brute_on(lq.g, s); }) == 6);

  Esd empty;
  CHECK(mwis_from_particles(empty, {}) == 0);
}

TEST_CASE("gadget shape") {
  Graph p3 = Graph::from_edges(3, {{0, 1}, {1, 2}});
  auto l = line_graph_with_esd(p3, {2, 3});
  auto parts = particles(l.esd);
  ParticleValues vals;
  for (const auto& p : parts) vals.push_back(brute_on(l.g, p.members));
  Gadget gd = gadget_graph(l.esd, parts, vals);
  CHECK(gd.host_of.size() == 3);
  CHECK(gd.instance.n == 5);
  CHECK(gd.instance.edges.size() == 6);
  CHECK(gd.base_value == 0);
  CHECK_THROWS_AS(gadget_graph(l.esd, parts, {}), std::invalid_argument);
}

TEST_CASE("particle combination matches brute force and matchings") {
  Rng rng(5);
  for (int i = 0; i < 60; ++i) {
    Graph h = random_graph(static_cast<Vertex>(rng.range(2, 7)), 0.5, rng);
    auto w = random_weights(static_cast<Vertex>(h.edge_count()), rng, 1, 10);
    auto lg = line_graph_with_esd(h, w);
    if (lg.g.size() > 20) continue;
    Weight got = mwis_from_particles_with(lg.esd, [&](const VertexSet& s) { return brute_on(lg.g, s); });
    CHECK(got == mwis_brute(lg.g).weight);
    CHECK(got == mwm_brute(h, edge_weight_map(h, w)).weight);
  }
  for (int i = 0; i < 150; ++i) {
    auto dg = random_decomposed_graph(rng);
    Weight got = mwis_from_particles_with(dg.esd, [&](const VertexSet& s) { return brute_on(dg.g, s); });
    CHECK(got == mwis_brute(dg.g).weight);
  }
}

TEST_CASE("reconstruction yields an optimal independent set") {
  Rng rng(6);
  for (int i = 0; i < 150; ++i) {
    auto dg = random_decomposed_graph(rng);
    auto parts = particles(dg.esd);
    ParticleValues vals;
    std::vector<VertexSet> wit;
    for (const auto& p : parts) {
      auto r = mwis_brute(dg.g, p.members);
      vals.push_back(r.weight);
      wit.push_back(r.vertices);
    }
    Gadget gd = gadget_graph(dg.esd, parts, vals);
    Matching m = max_weight_matching(gd.instance);
    VertexSet s = reconstruct_independent_set(parts, wit, gd, m);
    CHECK(is_independent(dg.g, s));
    CHECK(dg.g.weight_of(s) == gd.base_value + m.weight);
    CHECK(dg.g.weight_of(s) == mwis_brute(dg.g).weight);
  }
}
