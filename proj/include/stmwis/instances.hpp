#pragma once

// Seeded instance generators. Every generator is a deterministic function of
// its parameters and seed: mt19937_64 output is mapped to integers without
// going through std::uniform_*_distribution, whose output is not portable.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "esd.hpp"
#include "graph.hpp"
#include "oracles.hpp"

namespace stmwis {

class GeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return x % n;
  }

  // Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool chance(double p) { return static_cast<double>(eng_() >> 11) * 0x1.0p-53 < p; }

 private:
  std::mt19937_64 eng_;
};

inline std::vector<Weight> random_weights(Vertex n, Rng& rng, Weight lo, Weight hi) {
  std::vector<Weight> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = rng.range(lo, hi);
  return w;
}

inline Graph random_graph(Vertex n, double p, Rng& rng, Weight wlo = 1, Weight whi = 1) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.chance(p)) edges.push_back({u, v});
    }
  }
  return Graph::from_edges(n, edges, random_weights(n, rng, wlo, whi));
}

inline Graph random_connected_graph(Vertex n, double p, Rng& rng, Weight wlo = 1, Weight whi = 1,
                                    int cap = 10000) {
  for (int attempt = 0; attempt < cap; ++attempt) {
    Graph g = random_graph(n, p, rng, wlo, whi);
    if (is_connected(g, g.vertices())) return g;
  }
  throw GeneratorError("random_connected_graph: resample cap exceeded");
}

struct SttFreeOptions {
  bool connected = false;
  Weight wlo = 1;
  Weight whi = 1;
  int cap = 10000;
};

// Erdős–Rényi draws until one has no induced S_{t,t,t}.
inline Graph random_sttt_free(Vertex n, double p, int t, Rng& rng, const SttFreeOptions& opt = {}) {
  for (int attempt = 0; attempt < opt.cap; ++attempt) {
    Graph g = random_graph(n, p, rng, opt.wlo, opt.whi);
    if (opt.connected && !is_connected(g, g.vertices())) continue;
    if (!find_induced_sttt(g, t)) return g;
  }
  throw GeneratorError("random_sttt_free: resample cap exceeded");
}

inline Graph random_sttt_free(Vertex n, double p, int t, std::uint64_t seed, const SttFreeOptions& opt = {}) {
  Rng rng(seed);
  return random_sttt_free(n, p, t, rng, opt);
}

namespace detail {

inline void build_cograph(Vertex first, Vertex n, Rng& rng, std::vector<Edge>& edges) {
  if (n <= 1) return;
  auto left = static_cast<Vertex>(rng.range(1, n - 1));
  build_cograph(first, left, rng, edges);
  build_cograph(first + left, n - left, rng, edges);
  if (rng.chance(0.5)) {
    for (Vertex u = first; u < first + left; ++u) {
      for (Vertex v = first + left; v < first + n; ++v) edges.push_back({u, v});
    }
  }
}

}  // namespace detail

// Random cograph: recursive disjoint union or join of two smaller cographs.
inline Graph cograph(Vertex n, Rng& rng, Weight wlo = 1, Weight whi = 1) {
  std::vector<Edge> edges;
  detail::build_cograph(0, n, rng, edges);
  return Graph::from_edges(n, edges, random_weights(n, rng, wlo, whi));
}

struct DecomposedGraph {
  Graph g;
  Esd esd;
};

// Line graph of h; vertex i is the i-th edge of h.edges(). The decomposition
// has host h and puts edge i alone in its edge set and both interfaces.
inline DecomposedGraph line_graph_with_esd(const Graph& h, std::vector<Weight> edge_weights = {}) {
  auto he = h.edges();
  const auto m = static_cast<Vertex>(he.size());
  if (edge_weights.empty()) edge_weights.assign(he.size(), 1);
  if (edge_weights.size() != he.size()) throw std::invalid_argument("line_graph_with_esd: weight count mismatch");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < m; ++i) {
    for (Vertex j = i + 1; j < m; ++j) {
      const Edge& a = he[static_cast<std::size_t>(i)];
      const Edge& b = he[static_cast<std::size_t>(j)];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) edges.push_back({i, j});
    }
  }
  DecomposedGraph out{Graph::from_edges(m, edges, std::move(edge_weights)), {}};
  for (Vertex x = 0; x < h.size(); ++x) out.esd.add_host_vertex(x);
  for (Vertex i = 0; i < m; ++i) {
    const Edge& e = he[static_cast<std::size_t>(i)];
    out.esd.add_host_edge(e.u, e.v, {i}, {i}, {i});
  }
  out.esd.alive = out.g.vertices();
  return out;
}

// A random graph together with a valid decomposition of it. Vertices are
// spread over random host sets; edges forced by interface completeness are
// added, other allowed edges appear with probability `pe`.
inline DecomposedGraph random_decomposed_graph(Rng& rng, int max_host = 5, Vertex max_vertices = 14,
                                               double ph = 0.6, double pe = 0.4) {
  using detail::Loc;
  using detail::LocKind;
  const auto nh = static_cast<HostId>(rng.range(1, max_host));
  Esd d;
  for (HostId x = 0; x < nh; ++x) d.add_host_vertex(x);
  std::vector<HostEdge> hedges;
  for (HostId x = 0; x < nh; ++x) {
    for (HostId y = x + 1; y < nh; ++y) {
      if (rng.chance(ph)) {
        d.add_host_edge(x, y, {}, {}, {});
        hedges.push_back({x, y});
      }
    }
  }
  auto triangles = d.host_triangles();

  const auto n = static_cast<Vertex>(rng.range(0, max_vertices));
  std::vector<Loc> loc(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    auto& l = loc[static_cast<std::size_t>(v)];
    std::uint64_t kind = rng.below(10);
    if (!triangles.empty() && kind == 0) {
      const auto& t = triangles[rng.below(triangles.size())];
      l = Loc{LocKind::triangle, t[0], t[1], t[2]};
      auto& s = d.triangle_sets[t];
      s = set_with(s, v);
    } else if (!hedges.empty() && kind < 7) {
      HostEdge e = hedges[rng.below(hedges.size())];
      l = Loc{LocKind::edge, e.first, e.second, -1, rng.chance(0.5), rng.chance(0.5)};
      auto& s = d.edge_sets[e];
      s.full = set_with(s.full, v);
      if (l.at_a) s.at_lo = set_with(s.at_lo, v);
      if (l.at_b) s.at_hi = set_with(s.at_hi, v);
    } else {
      auto x = static_cast<HostId>(rng.below(static_cast<std::uint64_t>(nh)));
      l = Loc{LocKind::vertex, x};
      d.vertex_sets[x] = set_with(d.vertex_sets[x], v);
    }
  }

  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const Loc& p = loc[static_cast<std::size_t>(u)];
      const Loc& q = loc[static_cast<std::size_t>(v)];
      bool same = p.kind == q.kind && p.a == q.a && p.b == q.b && p.c == q.c;
      bool forced = !same && p.kind == LocKind::edge && q.kind == LocKind::edge &&
                    detail::cross_edge_allowed(p, q);
      if (forced || ((same || detail::cross_edge_allowed(p, q)) && rng.chance(pe))) edges.push_back({u, v});
    }
  }
  DecomposedGraph out{Graph::from_edges(n, edges, random_weights(n, rng, 1, 10)), std::move(d)};
  out.esd.alive = out.g.vertices();
  return out;
}

// Keeps validity: deletes random base vertices, then adds an isolated host
// vertex with an empty set and an empty host edge.
inline Esd perturb_esd(const Esd& d, Rng& rng) {
  VertexSet removed;
  for (Vertex v : d.alive) {
    if (rng.chance(0.25)) removed.push_back(v);
  }
  Esd out = restrict_esd(d, removed);
  HostId fresh = out.vertex_sets.empty() ? 0 : out.vertex_sets.rbegin()->first + 1;
  if (rng.chance(0.5)) out.add_host_vertex(fresh++);
  auto hosts = out.host_vertices();
  if (hosts.size() >= 2 && rng.chance(0.5)) {
    HostId x = hosts[rng.below(hosts.size())];
    HostId y = hosts[rng.below(hosts.size())];
    if (x != y && !out.has_host_edge(x, y)) out.add_host_edge(x, y, {}, {}, {});
  }
  return out;
}

}  // namespace stmwis
