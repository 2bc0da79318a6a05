#pragma once

// Separator machinery used by the IND solver: thresholds, Gyárfás paths,
// relevant sets, boosted separators, inferred decompositions, level sets and
// branchability. Every fractional threshold is compared by exact integer
// cross-multiplication.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "esd.hpp"
#include "graph.hpp"

namespace stmwis {

using i128 = __int128;

// max(2, ceil(log2 n))
inline std::int64_t ilog(std::int64_t n) {
  std::int64_t k = 0;
  while ((std::int64_t{1} << k) < n) ++k;
  return std::max<std::int64_t>(2, k);
}

struct AlgoConfig {
  int t = 2;
  std::int64_t ct = 68;  // max(34t, what the backend declares) outside test mode
  bool test_mode = false;
  // The numeric constants of the solver. Test mode lowers them so that small
  // instances reach every case.
  std::int64_t c32 = 32;
  std::int64_t c200 = 200;
  std::int64_t c800 = 800;
  std::int64_t c28000 = 28000;
  int jobs = 1;

  static AlgoConfig standard(int t, std::int64_t backend_ct = 0) {
    AlgoConfig c;
    c.t = t;
    c.ct = std::max<std::int64_t>(34 * t, backend_ct);
    return c;
  }

  static AlgoConfig testing(int t) {
    AlgoConfig c;
    c.t = t;
    c.ct = 1;
    c.test_mode = true;
    c.c32 = c.c200 = c.c800 = c.c28000 = 1;
    return c;
  }

  void check() const {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    if (ct < 1) throw std::invalid_argument("c_t must be at least 1");
    if (!test_mode && ct < 34 * t) throw std::invalid_argument("c_t below 34t requires test mode");
    if (c32 < 1 || c200 < 1 || c800 < 1 || c28000 < 1) throw std::invalid_argument("constants must be positive");
  }

  // 32 c_t^2 log^2 N
  i128 k_relevant(std::int64_t n) const {
    i128 l = ilog(n);
    return static_cast<i128>(c32) * ct * ct * l * l;
  }

  // log(200 c_t^3 log^3 N)
  std::int64_t separator_depth(std::int64_t n) const {
    i128 l = ilog(n);
    i128 v = static_cast<i128>(c200) * ct * ct * ct * l * l * l;
    std::int64_t k = 0;
    while ((static_cast<i128>(1) << k) < v) ++k;
    return std::max<std::int64_t>(2, k);
  }
};

// ---------------------------------------------------------------------------

// Largest |C ∩ z| over components C of g[alive ∖ sep].
inline std::size_t max_component_overlap(const Graph& g, const VertexSet& alive, const VertexSet& sep,
                                         const VertexSet& z) {
  std::size_t best = 0;
  for (const auto& c : components(g, set_difference(alive, sep))) {
    best = std::max(best, set_intersection(c, z).size());
  }
  return best;
}

inline std::size_t max_component_size(const Graph& g, const VertexSet& alive, const VertexSet& sep = {}) {
  std::size_t best = 0;
  for (const auto& c : components(g, set_difference(alive, sep))) best = std::max(best, c.size());
  return best;
}

// ---------------------------------------------------------------------------
// Gyárfás path

// Induced path Q such that every component of g[alive] − N[Q] weighs at most
// half of alive. Empty iff no component of g[alive] is heavier than half.
inline std::vector<Vertex> gyarfas_path(const Graph& g, const VertexSet& alive, std::span<const Weight> w) {
  const Weight total = weight_of(w, alive);
  auto heavy_component = [&](const VertexSet& within) -> std::optional<VertexSet> {
    for (auto& c : components(g, within)) {
      if (2 * static_cast<i128>(weight_of(w, c)) > total) return c;
    }
    return std::nullopt;
  };
  std::vector<Vertex> path;
  auto first = heavy_component(alive);
  if (!first) return path;
  VertexSet h = *first;
  Vertex u = h.front();
  while (true) {
    path.push_back(u);
    auto c = heavy_component(set_difference(h, closed_neighborhood(g, u, h)));
    if (!c) return path;
    // The lowest vertex of H adjacent to C; it is a neighbor of u.
    Vertex next = -1;
    for (Vertex x : h) {
      if (set_contains(*c, x)) continue;
      bool touches = std::any_of(g.neighbors(x).begin(), g.neighbors(x).end(),
                                 [&](Vertex y) { return set_contains(*c, y); });
      if (touches) {
        next = x;
        break;
      }
    }
    if (next < 0) throw std::logic_error("gyarfas_path: heavy component without attachment");
    h = set_with(std::move(*c), next);
    u = next;
  }
}

inline bool is_induced_path(const Graph& g, const std::vector<Vertex>& q) {
  if (make_set(q).size() != q.size()) return false;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      if (g.has_edge(q[i], q[j]) != (j == i + 1)) return false;
    }
  }
  return true;
}

// The post-condition of gyarfas_path, checked directly.
inline bool verify_gyarfas_path(const Graph& g, const VertexSet& alive, std::span<const Weight> w,
                                const std::vector<Vertex>& q) {
  if (!is_induced_path(g, q)) return false;
  if (!set_is_subset(make_set(q), alive)) return false;
  const Weight total = weight_of(w, alive);
  VertexSet rest = set_difference(alive, closed_neighborhood(g, make_set(q), alive));
  for (const auto& c : components(g, rest)) {
    if (2 * static_cast<i128>(weight_of(w, c)) > total) return false;
  }
  if (q.empty()) {
    for (const auto& c : components(g, alive)) {
      if (2 * static_cast<i128>(weight_of(w, c)) > total) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

// Vertices of N[X] ∩ alive with a neighbor in a component of alive − N[X]
// that has more than N / (32 c_t^2 log^2 N) vertices.
inline VertexSet relevant(const Graph& g, const VertexSet& alive, const VertexSet& x, std::int64_t n,
                          const AlgoConfig& cfg) {
  VertexSet y = closed_neighborhood(g, x, alive);
  const i128 k = cfg.k_relevant(n);
  VertexSet big;
  for (const auto& c : components(g, set_difference(alive, y))) {
    if (static_cast<i128>(c.size()) * k > n) big = set_union(big, c);
  }
  if (big.empty()) return {};
  std::vector<Vertex> out;
  for (Vertex v : y) {
    for (Vertex u : g.neighbors(v)) {
      if (set_contains(big, u)) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

// N[X] ∩ alive is an s-boosted balanced separator with core X.
inline bool is_boosted_bs(const Graph& g, const VertexSet& alive, const VertexSet& x, std::int64_t s) {
  if (s < 1) throw std::invalid_argument("is_boosted_bs: s must be positive");
  if (static_cast<std::int64_t>(x.size()) > s) return false;
  const i128 cmax = static_cast<i128>(max_component_size(g, alive));
  const i128 worst = static_cast<i128>(max_component_size(g, alive, closed_neighborhood(g, x, alive)));
  return worst * 16 * s * s <= cmax;
}

// No particle has over (1 − 1/(32 c_t^2 log^2 N)) N vertices.
inline bool is_n_good(const Esd& d, std::int64_t n, const AlgoConfig& cfg) {
  const i128 k = cfg.k_relevant(n);
  for (const auto& p : particles(d)) {
    if (static_cast<i128>(p.members.size()) * k > (k - 1) * n) return false;
  }
  return true;
}

// N[X] ∩ alive leaves no component over N / (32 c_t^2 log^2 N) vertices.
inline bool is_case3_separator(const Graph& g, const VertexSet& alive, const VertexSet& x, std::int64_t n,
                               const AlgoConfig& cfg) {
  const i128 k = cfg.k_relevant(n);
  return static_cast<i128>(max_component_size(g, alive, closed_neighborhood(g, x, alive))) * k <= n;
}

// Decomposition of g[alive] inferred from a core X and a decomposition `base`
// of a graph containing alive − N[X]: components avoiding N[X] get their own
// copy of the host, the others become isolated host vertices.
inline Esd infer_esd(const Graph& g, const VertexSet& x, const Esd& base, const VertexSet& alive) {
  VertexSet y = closed_neighborhood(g, x, alive);
  Esd out;
  out.alive = alive;
  HostId next = 0;
  for (const auto& c : components(g, alive)) {
    if (set_intersects(c, y)) {
      out.add_host_vertex(next++, c);
      continue;
    }
    if (!set_is_subset(c, base.alive)) throw std::invalid_argument("infer_esd: component not covered by the decomposition");
    std::map<HostId, HostId> rename;
    for (const auto& [h, s] : base.vertex_sets) {
      rename[h] = next;
      out.add_host_vertex(next++, set_intersection(s, c));
    }
    for (const auto& [e, s] : base.edge_sets) {
      HostId a = rename.at(e.first);
      HostId b = rename.at(e.second);
      out.add_host_edge(a, b, set_intersection(s.full, c), set_intersection(s.at_lo, c),
                        set_intersection(s.at_hi, c));
    }
    for (const auto& [t, s] : base.triangle_sets) {
      VertexSet part = set_intersection(s, c);
      if (!part.empty()) out.set_triangle(rename.at(t[0]), rename.at(t[1]), rename.at(t[2]), std::move(part));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Level sets and branchability

using FList = std::vector<VertexSet>;

// For each vertex of alive, the number of sets N[F_i] ∩ alive containing it.
inline std::vector<int> level_counts(const Graph& g, const VertexSet& alive, const FList& f) {
  std::vector<int> count(static_cast<std::size_t>(g.size()), 0);
  for (const auto& core : f) {
    for (Vertex v : closed_neighborhood(g, core, alive)) ++count[static_cast<std::size_t>(v)];
  }
  return count;
}

inline VertexSet level_set(const Graph& g, const VertexSet& alive, const FList& f, int j) {
  auto count = level_counts(g, alive, f);
  VertexSet out;
  for (Vertex v : alive) {
    if (count[static_cast<std::size_t>(v)] >= j) out.push_back(v);
  }
  return out;
}

namespace detail {

// Smallest j ≥ 1 with |N[v] ∩ L_j| · 2^j ≥ N, given precomputed counts.
inline std::optional<int> branch_level(const Graph& g, const VertexSet& alive, Vertex v, std::int64_t n,
                                       const std::vector<int>& count) {
  VertexSet nv = closed_neighborhood(g, v, alive);
  for (int j = 1;; ++j) {
    std::int64_t hits = 0;
    bool any_level = false;
    for (Vertex u : nv) {
      if (count[static_cast<std::size_t>(u)] >= j) ++hits;
    }
    for (Vertex u : alive) {
      if (count[static_cast<std::size_t>(u)] >= j) {
        any_level = true;
        break;
      }
    }
    if (!any_level) return std::nullopt;
    if (hits > 0 && (j >= 62 || (static_cast<i128>(hits) << j) >= n)) return j;
  }
}

}  // namespace detail

// Smallest level at which v is branchable with respect to F1 or F2.
inline std::optional<int> is_branchable(const Graph& g, const VertexSet& alive, Vertex v, std::int64_t n,
                                        const FList& f1, const FList& f2) {
  auto a = detail::branch_level(g, alive, v, n, level_counts(g, alive, f1));
  auto b = detail::branch_level(g, alive, v, n, level_counts(g, alive, f2));
  if (a && b) return std::min(*a, *b);
  return a ? a : b;
}

// Lowest-id branchable vertex, if any.
inline std::optional<Vertex> find_branchable(const Graph& g, const VertexSet& alive, std::int64_t n,
                                             const std::vector<int>& count1, const std::vector<int>& count2) {
  for (Vertex v : alive) {
    if (detail::branch_level(g, alive, v, n, count1) || detail::branch_level(g, alive, v, n, count2)) return v;
  }
  return std::nullopt;
}

}  // namespace stmwis
