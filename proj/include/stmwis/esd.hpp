#pragma once

// Extended strip decompositions: a host graph H plus an assignment of base
// vertices to host vertices, host edges (with two interfaces) and host
// triangles. Host ids are arbitrary nonnegative integers and stay stable
// under cleaning so that decompositions can be compared step by step.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace stmwis {

using HostId = std::int32_t;
using HostEdge = std::pair<HostId, HostId>;  // first < second
using HostTriangle = std::array<HostId, 3>;   // sorted

inline HostEdge host_edge(HostId x, HostId y) { return x < y ? HostEdge{x, y} : HostEdge{y, x}; }

inline HostTriangle host_triangle(HostId a, HostId b, HostId c) {
  HostTriangle t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

struct EdgeSets {
  VertexSet full;
  VertexSet at_lo;  // interface at the smaller endpoint
  VertexSet at_hi;  // interface at the larger endpoint
  friend bool operator==(const EdgeSets&, const EdgeSets&) = default;
};

class Esd {
 public:
  VertexSet alive;  // the decomposed vertex set of the base graph
  std::map<HostId, VertexSet> vertex_sets;
  std::map<HostEdge, EdgeSets> edge_sets;
  std::map<HostTriangle, VertexSet> triangle_sets;  // sparse; absent means empty

  friend bool operator==(const Esd&, const Esd&) = default;

  std::size_t host_vertex_count() const { return vertex_sets.size(); }
  std::size_t host_edge_count() const { return edge_sets.size(); }

  bool has_host_vertex(HostId x) const { return vertex_sets.count(x) != 0; }
  bool has_host_edge(HostId x, HostId y) const { return edge_sets.count(host_edge(x, y)) != 0; }

  std::vector<HostId> host_vertices() const {
    std::vector<HostId> out;
    for (const auto& kv : vertex_sets) out.push_back(kv.first);
    return out;
  }

  std::map<HostId, std::vector<HostId>> host_adjacency() const {
    std::map<HostId, std::vector<HostId>> adj;
    for (const auto& kv : vertex_sets) adj[kv.first];
    for (const auto& kv : edge_sets) {
      adj[kv.first.first].push_back(kv.first.second);
      adj[kv.first.second].push_back(kv.first.first);
    }
    for (auto& kv : adj) std::sort(kv.second.begin(), kv.second.end());
    return adj;
  }

  std::vector<HostId> host_neighbors(HostId x) const {
    std::vector<HostId> out;
    for (const auto& kv : edge_sets) {
      if (kv.first.first == x) out.push_back(kv.first.second);
      if (kv.first.second == x) out.push_back(kv.first.first);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t host_degree(HostId x) const { return host_neighbors(x).size(); }

  // All triangles of H in lexicographic order.
  std::vector<HostTriangle> host_triangles() const {
    std::vector<HostTriangle> out;
    auto adj = host_adjacency();
    for (const auto& [a, na] : adj) {
      for (HostId b : na) {
        if (b <= a) continue;
        for (HostId c : adj.at(b)) {
          if (c <= b) continue;
          if (std::binary_search(na.begin(), na.end(), c)) out.push_back({a, b, c});
        }
      }
    }
    return out;
  }

  const VertexSet& vertex_set(HostId x) const { return vertex_sets.at(x); }
  const EdgeSets& edge(HostId x, HostId y) const { return edge_sets.at(host_edge(x, y)); }

  // η(xy, at) for at ∈ {x, y}.
  const VertexSet& interface(HostId x, HostId y, HostId at) const {
    const EdgeSets& e = edge(x, y);
    return at == std::min(x, y) ? e.at_lo : e.at_hi;
  }
  VertexSet& interface(HostId x, HostId y, HostId at) {
    EdgeSets& e = edge_sets.at(host_edge(x, y));
    return at == std::min(x, y) ? e.at_lo : e.at_hi;
  }

  const VertexSet& triangle_set(const HostTriangle& t) const {
    static const VertexSet empty;
    auto it = triangle_sets.find(t);
    return it == triangle_sets.end() ? empty : it->second;
  }

  void add_host_vertex(HostId x, VertexSet s = {}) { vertex_sets[x] = std::move(s); }

  // Interfaces are given at x and at y respectively.
  void add_host_edge(HostId x, HostId y, VertexSet full, VertexSet at_x, VertexSet at_y) {
    if (x > y) std::swap(at_x, at_y);
    edge_sets[host_edge(x, y)] = EdgeSets{std::move(full), std::move(at_x), std::move(at_y)};
  }

  void set_triangle(HostId a, HostId b, HostId c, VertexSet s) {
    triangle_sets[host_triangle(a, b, c)] = std::move(s);
  }

  // Deletes a host edge together with every triangle that uses it.
  void remove_host_edge(HostId x, HostId y) {
    HostEdge e = host_edge(x, y);
    edge_sets.erase(e);
    for (auto it = triangle_sets.begin(); it != triangle_sets.end();) {
      const HostTriangle& t = it->first;
      bool uses = std::count(t.begin(), t.end(), e.first) && std::count(t.begin(), t.end(), e.second);
      it = uses ? triangle_sets.erase(it) : std::next(it);
    }
  }

  void remove_host_vertex(HostId x) {
    for (HostId y : host_neighbors(x)) remove_host_edge(x, y);
    vertex_sets.erase(x);
  }
};

// One host vertex per component of g[alive].
inline Esd component_esd(const Graph& g, const VertexSet& alive) {
  Esd d;
  d.alive = alive;
  HostId id = 0;
  for (auto& c : components(g, alive)) d.add_host_vertex(id++, std::move(c));
  return d;
}

// A single host vertex carrying everything.
inline Esd trivial_esd(const VertexSet& alive) {
  Esd d;
  d.alive = alive;
  d.add_host_vertex(0, alive);
  return d;
}

// ---------------------------------------------------------------------------
// Validation

struct EsdViolation {
  std::string kind;  // host | range | partition | interface | completeness | edge
  std::string message;
};

namespace detail {

enum class LocKind { none, vertex, edge, triangle };

struct Loc {
  LocKind kind = LocKind::none;
  HostId a = -1, b = -1, c = -1;
  bool at_a = false, at_b = false;  // edge sets only
};

inline std::string host_name(HostEdge e) {
  return std::to_string(e.first) + "-" + std::to_string(e.second);
}

inline std::string host_name(const HostTriangle& t) {
  return std::to_string(t[0]) + "-" + std::to_string(t[1]) + "-" + std::to_string(t[2]);
}

inline bool cross_edge_allowed(const Loc& p, const Loc& q) {
  using K = LocKind;
  if (p.kind == K::edge && q.kind == K::edge) {
    HostId pe[2] = {p.a, p.b};
    bool pi[2] = {p.at_a, p.at_b};
    HostId qe[2] = {q.a, q.b};
    bool qi[2] = {q.at_a, q.at_b};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        if (pe[i] == qe[j] && pi[i] && qi[j]) return true;
      }
    }
    return false;
  }
  if (p.kind == K::vertex && q.kind == K::edge) return cross_edge_allowed(q, p);
  if (p.kind == K::edge && q.kind == K::vertex) {
    return (q.a == p.a && p.at_a) || (q.a == p.b && p.at_b);
  }
  if (p.kind == K::edge && q.kind == K::triangle) return cross_edge_allowed(q, p);
  if (p.kind == K::triangle && q.kind == K::edge) {
    HostTriangle t{p.a, p.b, p.c};
    bool in_t = std::count(t.begin(), t.end(), q.a) && std::count(t.begin(), t.end(), q.b);
    return in_t && q.at_a && q.at_b;
  }
  return false;
}

inline std::string loc_name(const Loc& l) {
  switch (l.kind) {
    case LocKind::vertex: return "vertex set " + std::to_string(l.a);
    case LocKind::edge: return "edge set " + host_name(HostEdge{l.a, l.b});
    case LocKind::triangle: return "triangle set " + host_name(HostTriangle{l.a, l.b, l.c});
    default: return "nothing";
  }
}

}  // namespace detail

// First violated property, or nullopt for a valid decomposition of g[d.alive].
inline std::optional<EsdViolation> validate_esd(const Graph& g, const Esd& d) {
  using detail::Loc;
  using detail::LocKind;
  const Vertex n = g.size();
  for (Vertex v : d.alive) {
    if (v < 0 || v >= n) return EsdViolation{"range", "alive vertex " + std::to_string(v) + " out of range"};
  }
  if (!std::is_sorted(d.alive.begin(), d.alive.end()) ||
      std::adjacent_find(d.alive.begin(), d.alive.end()) != d.alive.end()) {
    return EsdViolation{"range", "alive set not sorted and unique"};
  }
  for (const auto& [x, s] : d.vertex_sets) {
    if (x < 0) return EsdViolation{"host", "negative host vertex id " + std::to_string(x)};
  }
  for (const auto& [e, s] : d.edge_sets) {
    if (e.first >= e.second) return EsdViolation{"host", "host edge " + detail::host_name(e) + " not normalized"};
    if (!d.has_host_vertex(e.first) || !d.has_host_vertex(e.second)) {
      return EsdViolation{"host", "host edge " + detail::host_name(e) + " uses an undeclared host vertex"};
    }
  }
  for (const auto& [t, s] : d.triangle_sets) {
    if (!(t[0] < t[1] && t[1] < t[2]) || !d.has_host_edge(t[0], t[1]) || !d.has_host_edge(t[1], t[2]) ||
        !d.has_host_edge(t[0], t[2])) {
      return EsdViolation{"host", "triangle " + detail::host_name(t) + " is not a triangle of the host"};
    }
  }

  // Partition.
  std::vector<Loc> loc(static_cast<std::size_t>(n));
  Membership in_alive(static_cast<std::size_t>(n), d.alive);
  std::size_t assigned = 0;
  auto claim = [&](Vertex v, const Loc& l) -> std::optional<EsdViolation> {
    if (v < 0 || v >= n) return EsdViolation{"range", "vertex " + std::to_string(v) + " out of range"};
    if (!in_alive(v)) {
      return EsdViolation{"partition", "vertex " + std::to_string(v) + " in " + detail::loc_name(l) +
                                           " is not in the decomposed set"};
    }
    auto& cur = loc[static_cast<std::size_t>(v)];
    if (cur.kind != LocKind::none) {
      return EsdViolation{"partition", "vertex " + std::to_string(v) + " in both " + detail::loc_name(cur) +
                                           " and " + detail::loc_name(l)};
    }
    cur = l;
    ++assigned;
    return std::nullopt;
  };
  for (const auto& [x, s] : d.vertex_sets) {
    for (Vertex v : s) {
      if (auto bad = claim(v, Loc{LocKind::vertex, x})) return bad;
    }
  }
  for (const auto& [e, s] : d.edge_sets) {
    if (!set_is_subset(s.at_lo, s.full) || !set_is_subset(s.at_hi, s.full)) {
      return EsdViolation{"interface", "interface of edge " + detail::host_name(e) + " not inside its edge set"};
    }
    for (Vertex v : s.full) {
      Loc l{LocKind::edge, e.first, e.second, -1, set_contains(s.at_lo, v), set_contains(s.at_hi, v)};
      if (auto bad = claim(v, l)) return bad;
    }
  }
  for (const auto& [t, s] : d.triangle_sets) {
    for (Vertex v : s) {
      if (auto bad = claim(v, Loc{LocKind::triangle, t[0], t[1], t[2]})) return bad;
    }
  }
  if (assigned != d.alive.size()) {
    for (Vertex v : d.alive) {
      if (loc[static_cast<std::size_t>(v)].kind == LocKind::none) {
        return EsdViolation{"partition", "vertex " + std::to_string(v) + " is in no set"};
      }
    }
  }

  // Interfaces at a common host vertex are complete to each other.
  auto adj = d.host_adjacency();
  for (const auto& [x, nb] : adj) {
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        const VertexSet& p = d.interface(x, nb[i], x);
        const VertexSet& q = d.interface(x, nb[j], x);
        for (Vertex u : p) {
          for (Vertex v : q) {
            if (!g.has_edge(u, v)) {
              return EsdViolation{"completeness", "interfaces of " + detail::host_name(host_edge(x, nb[i])) +
                                                      " and " + detail::host_name(host_edge(x, nb[j])) + " at " +
                                                      std::to_string(x) + " miss edge " + std::to_string(u) +
                                                      " " + std::to_string(v)};
            }
          }
        }
      }
    }
  }

  // Every base edge lies in one set or follows an allowed cross pattern.
  for (Vertex u : d.alive) {
    for (Vertex v : g.neighbors(u)) {
      if (v <= u || !in_alive(v)) continue;
      const Loc& p = loc[static_cast<std::size_t>(u)];
      const Loc& q = loc[static_cast<std::size_t>(v)];
      bool same = p.kind == q.kind && p.a == q.a && p.b == q.b && p.c == q.c;
      if (same || detail::cross_edge_allowed(p, q)) continue;
      return EsdViolation{"edge", "edge " + std::to_string(u) + " " + std::to_string(v) + " joins " +
                                      detail::loc_name(p) + " and " + detail::loc_name(q) +
                                      " outside the allowed patterns"};
    }
  }
  return std::nullopt;
}

inline bool is_rigid(const Esd& d) {
  for (const auto& [e, s] : d.edge_sets) {
    if (s.full.empty() || s.at_lo.empty() || s.at_hi.empty()) return false;
  }
  auto adj = d.host_adjacency();
  for (const auto& [x, s] : d.vertex_sets) {
    if (adj.at(x).empty() && s.empty()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Particles

enum class ParticleKind { vertex, edge_interior, half_edge, full_edge, triangle };

inline const char* to_string(ParticleKind k) {
  switch (k) {
    case ParticleKind::vertex: return "vertex";
    case ParticleKind::edge_interior: return "edge-interior";
    case ParticleKind::half_edge: return "half-edge";
    case ParticleKind::full_edge: return "full-edge";
    case ParticleKind::triangle: return "triangle";
  }
  return "?";
}

struct Particle {
  ParticleKind kind;
  std::vector<HostId> anchor;  // host vertex, edge (lo, hi) or triangle
  HostId side = -1;            // for half-edge particles: the endpoint x of A_xy^x
  VertexSet members;
};

// Vertex particles, then per edge (interior, half at lo, half at hi, full),
// then one particle per triangle of H.
inline std::vector<Particle> particles(const Esd& d) {
  std::vector<Particle> out;
  for (const auto& [x, s] : d.vertex_sets) out.push_back({ParticleKind::vertex, {x}, -1, s});
  auto triangles = d.host_triangles();
  for (const auto& [e, s] : d.edge_sets) {
    auto [x, y] = e;
    VertexSet interior = set_difference(s.full, set_union(s.at_lo, s.at_hi));
    out.push_back({ParticleKind::edge_interior, {x, y}, -1, interior});
    out.push_back({ParticleKind::half_edge, {x, y}, x, set_union(d.vertex_set(x), set_difference(s.full, s.at_hi))});
    out.push_back({ParticleKind::half_edge, {x, y}, y, set_union(d.vertex_set(y), set_difference(s.full, s.at_lo))});
    VertexSet full = set_union(set_union(d.vertex_set(x), d.vertex_set(y)), s.full);
    for (const auto& t : triangles) {
      if (std::count(t.begin(), t.end(), x) && std::count(t.begin(), t.end(), y)) {
        full = set_union(full, d.triangle_set(t));
      }
    }
    out.push_back({ParticleKind::full_edge, {x, y}, -1, std::move(full)});
  }
  for (const auto& t : triangles) {
    out.push_back({ParticleKind::triangle, {t[0], t[1], t[2]}, -1, d.triangle_set(t)});
  }
  return out;
}

inline std::size_t max_particle_size(const Esd& d) {
  std::size_t best = 0;
  for (const auto& p : particles(d)) best = std::max(best, p.members.size());
  return best;
}

// Largest number of `of` vertices inside one particle.
inline std::size_t max_particle_overlap(const Esd& d, const VertexSet& of) {
  std::size_t best = 0;
  for (const auto& p : particles(d)) best = std::max(best, set_intersection(p.members, of).size());
  return best;
}

// ---------------------------------------------------------------------------
// Separations of H and the separators they induce in G

inline VertexSet preimage(const Esd& d, const VertexSet& a) {
  VertexSet out;
  for (const auto& [x, s] : d.vertex_sets) {
    if (set_contains(a, x)) out = set_union(out, s);
  }
  for (const auto& [e, s] : d.edge_sets) {
    if (set_contains(a, e.first) || set_contains(a, e.second)) out = set_union(out, s.full);
  }
  for (const auto& [t, s] : d.triangle_sets) {
    int hits = 0;
    for (HostId x : t) hits += set_contains(a, x) ? 1 : 0;
    if (hits >= 2) out = set_union(out, s);
  }
  return out;
}

// ⋃_{y ∈ N_H(x)} η(xy, x)
inline VertexSet interfaces_at(const Esd& d, HostId x) {
  VertexSet out;
  for (HostId y : d.host_neighbors(x)) out = set_union(out, d.interface(x, y, x));
  return out;
}

// At most two base vertices dominating all interfaces at x.
inline VertexSet dom_potato(const Esd& d, HostId x) {
  auto nb = d.host_neighbors(x);
  if (nb.size() < 2) throw std::invalid_argument("dom_potato: host vertex " + std::to_string(x) + " has degree < 2");
  const VertexSet& i1 = d.interface(x, nb[0], x);
  const VertexSet& i2 = d.interface(x, nb[1], x);
  if (i1.empty() || i2.empty()) throw std::invalid_argument("dom_potato: empty interface, decomposition not rigid");
  return make_set({i1.front(), i2.front()});
}

struct Separation {
  VertexSet a;
  VertexSet b;
};

inline bool is_valid_separation(const Esd& d, const Separation& s) {
  if (set_union(s.a, s.b) != make_set(d.host_vertices())) return false;
  VertexSet a_only = set_difference(s.a, s.b);
  VertexSet b_only = set_difference(s.b, s.a);
  for (const auto& [e, sets] : d.edge_sets) {
    bool ab = set_contains(a_only, e.first) && set_contains(b_only, e.second);
    bool ba = set_contains(b_only, e.first) && set_contains(a_only, e.second);
    if (ab || ba) return false;
  }
  return true;
}

inline VertexSet separation_separator(const Esd& d, const Separation& s) {
  VertexSet x;
  for (HostId h : set_intersection(s.a, s.b)) x = set_union(x, interfaces_at(d, h));
  return x;
}

// Checks the component classification promised for a separation separator.
inline bool verify_separation_separator(const Graph& g, const Esd& d, const Separation& s, const VertexSet& x) {
  VertexSet ab = set_intersection(s.a, s.b);
  std::vector<VertexSet> allowed{preimage(d, set_difference(s.a, s.b)), preimage(d, set_difference(s.b, s.a))};
  for (HostId h : ab) allowed.push_back(d.vertex_set(h));
  for (const auto& [e, sets] : d.edge_sets) {
    if (set_contains(s.a, e.first) && set_contains(s.a, e.second)) allowed.push_back(sets.full);
  }
  for (const auto& [t, sets] : d.triangle_sets) {
    int hits = 0;
    for (HostId h : t) hits += set_contains(ab, h) ? 1 : 0;
    if (hits >= 2) allowed.push_back(sets);
  }
  for (const auto& c : components(g, set_difference(d.alive, x))) {
    bool inside = std::any_of(allowed.begin(), allowed.end(), [&](const VertexSet& a) { return set_is_subset(c, a); });
    if (!inside) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Balanced separators with exact rational bounds.

struct Ratio {
  std::int64_t num;
  std::int64_t den;
};

// Every component of g[alive ∖ sep] has weight at most bound_num/bound_den · total,
// compared by cross-multiplication.
inline bool is_weight_balanced(const Graph& g, const VertexSet& alive, const VertexSet& sep,
                               std::span<const Weight> w, Ratio bound, Weight total) {
  for (const auto& c : components(g, set_difference(alive, sep))) {
    __int128 lhs = static_cast<__int128>(weight_of(w, c)) * bound.den;
    __int128 rhs = static_cast<__int128>(total) * bound.num;
    if (lhs > rhs) return false;
  }
  return true;
}

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ParticleSeparator {
  VertexSet hosts;  // F, at most two host vertices
  VertexSet x;      // union of the interfaces at F
};

// Given a particle of weight in [δw, (1−δ)w], returns a (1−δ)w-balanced
// separator made of the interfaces at no more than two host vertices.
inline ParticleSeparator substantial_particle_separator(const Graph& g, const Esd& d, Ratio delta) {
  if (delta.num <= 0 || delta.den <= 0 || 2 * delta.num >= delta.den) {
    throw PreconditionError("substantial_particle_separator: delta must lie in (0, 1/2)");
  }
  const Weight total = g.weight_of(d.alive);
  auto heavy = [&](const VertexSet& s) {  // w(s) >= δ w(G)
    return static_cast<__int128>(g.weight_of(s)) * delta.den >= static_cast<__int128>(total) * delta.num;
  };
  auto too_heavy = [&](const VertexSet& s) {  // w(s) > (1−δ) w(G)
    return static_cast<__int128>(g.weight_of(s)) * delta.den >
           static_cast<__int128>(total) * (delta.den - delta.num);
  };
  auto parts = particles(d);
  bool any_heavy = false;
  for (const auto& p : parts) {
    if (too_heavy(p.members)) {
      throw PreconditionError("substantial_particle_separator: a particle exceeds (1-delta) of the weight");
    }
    any_heavy = any_heavy || heavy(p.members);
  }
  if (!any_heavy) throw PreconditionError("substantial_particle_separator: no particle reaches delta of the weight");

  auto adj = d.host_adjacency();
  for (const auto& p : parts) {
    if (p.kind == ParticleKind::vertex && adj.at(p.anchor[0]).empty() && heavy(p.members)) return {};
  }
  for (const auto& p : parts) {
    if (p.kind != ParticleKind::full_edge || !heavy(p.members)) continue;
    ParticleSeparator out;
    for (HostId h : p.anchor) {
      if (adj.at(h).size() > 1) {
        out.hosts.push_back(h);
        out.x = set_union(out.x, interfaces_at(d, h));
      }
    }
    return out;
  }
  // Every particle is inside an isolated vertex particle or a full edge particle.
  throw std::logic_error("substantial_particle_separator: no maximal heavy particle found");
}

// ---------------------------------------------------------------------------
// Restriction and local cleaning

inline Esd restrict_esd(const Esd& d, const VertexSet& removed) {
  Esd out = d;
  out.alive = set_difference(d.alive, removed);
  for (auto& [x, s] : out.vertex_sets) s = set_difference(s, removed);
  for (auto& [e, s] : out.edge_sets) {
    s.full = set_difference(s.full, removed);
    s.at_lo = set_difference(s.at_lo, removed);
    s.at_hi = set_difference(s.at_hi, removed);
  }
  for (auto& [t, s] : out.triangle_sets) s = set_difference(s, removed);
  return out;
}

// (vertices in vertex sets) − |V(H)| − |E(H)| − (host vertices that are not
// isolated with an empty set). Strictly increases with every cleaning step.
inline std::int64_t cleaning_potential(const Esd& d) {
  auto adj = d.host_adjacency();
  std::int64_t in_vertex_sets = 0;
  std::int64_t busy = 0;
  for (const auto& [x, s] : d.vertex_sets) {
    in_vertex_sets += static_cast<std::int64_t>(s.size());
    if (!(adj.at(x).empty() && s.empty())) ++busy;
  }
  return in_vertex_sets - static_cast<std::int64_t>(d.vertex_sets.size()) -
         static_cast<std::int64_t>(d.edge_sets.size()) - busy;
}

enum class CleanStep {
  remove_empty_isolated = 1,
  move_isolated_set = 2,
  move_edge_component = 3,
  move_triangle_component = 4,
  move_interface_vertex = 5,
  remove_empty_interface_edge = 6,
  suppress_degree_one = 7,
};

namespace detail {

inline bool has_neighbor_in(const Graph& g, const VertexSet& c, const VertexSet& target) {
  for (Vertex v : c) {
    for (Vertex u : g.neighbors(v)) {
      if (set_contains(target, u)) return true;
    }
  }
  return false;
}

inline void erase_from_edge(EdgeSets& s, const VertexSet& c) {
  s.full = set_difference(s.full, c);
  s.at_lo = set_difference(s.at_lo, c);
  s.at_hi = set_difference(s.at_hi, c);
}

}  // namespace detail

// Applies the first applicable cleaning step; nullopt if none applies.
inline std::optional<CleanStep> local_clean_step(const Graph& g, Esd& d) {
  auto adj = d.host_adjacency();
  auto isolated_empty = [&](HostId x) { return adj.at(x).empty() && d.vertex_set(x).empty(); };

  for (const auto& [x, s] : d.vertex_sets) {
    if (isolated_empty(x)) {
      d.vertex_sets.erase(x);
      return CleanStep::remove_empty_isolated;
    }
  }

  for (const auto& [x, s] : d.vertex_sets) {
    if (!adj.at(x).empty() || s.empty()) continue;
    for (const auto& [y, t] : d.vertex_sets) {
      if (y == x || isolated_empty(y)) continue;
      d.vertex_sets[y] = set_union(t, s);
      d.vertex_sets[x].clear();
      return CleanStep::move_isolated_set;
    }
  }

  for (auto& [e, s] : d.edge_sets) {
    VertexSet interior = set_difference(s.full, set_union(s.at_lo, s.at_hi));
    if (interior.empty()) continue;
    auto comps = components(g, interior);
    // Orientation (lo, hi) then (hi, lo): the receiving endpoint comes first.
    std::pair<HostId, const VertexSet*> sides[2] = {{e.first, &s.at_hi}, {e.second, &s.at_lo}};
    const VertexSet* own[2] = {&s.at_lo, &s.at_hi};
    for (int k = 0; k < 2; ++k) {
      VertexSet far_only = set_difference(*sides[k].second, *own[k]);
      for (const auto& c : comps) {
        if (detail::has_neighbor_in(g, c, far_only)) continue;
        HostId x = sides[k].first;
        detail::erase_from_edge(s, c);
        d.vertex_sets[x] = set_union(d.vertex_sets[x], c);
        return CleanStep::move_edge_component;
      }
    }
  }

  for (auto& [t, s] : d.triangle_sets) {
    if (s.empty()) continue;
    for (const auto& c : components(g, s)) {
      for (int k = 0; k < 3; ++k) {
        HostId x = t[static_cast<std::size_t>(k)];
        HostId y = t[static_cast<std::size_t>((k + 1) % 3)];
        HostId z = t[static_cast<std::size_t>((k + 2) % 3)];
        VertexSet both = set_intersection(d.interface(y, z, y), d.interface(y, z, z));
        if (detail::has_neighbor_in(g, c, both)) continue;
        s = set_difference(s, c);
        d.vertex_sets[x] = set_union(d.vertex_sets[x], c);
        return CleanStep::move_triangle_component;
      }
    }
  }

  for (auto& [e, s] : d.edge_sets) {
    for (int k = 0; k < 2; ++k) {
      HostId x = k == 0 ? e.first : e.second;
      const VertexSet& mine = k == 0 ? s.at_lo : s.at_hi;
      const VertexSet& other = k == 0 ? s.at_hi : s.at_lo;
      for (Vertex v : set_difference(mine, other)) {
        bool contained = true;
        for (Vertex u : g.neighbors(v)) {
          if (set_contains(s.full, u) && !set_contains(mine, u)) {
            contained = false;
            break;
          }
        }
        if (!contained) continue;
        detail::erase_from_edge(s, VertexSet{v});
        d.vertex_sets[x] = set_with(d.vertex_sets[x], v);
        return CleanStep::move_interface_vertex;
      }
    }
  }

  for (const auto& [e, s] : d.edge_sets) {
    HostId receiver;
    if (s.at_lo.empty()) {
      receiver = e.second;
    } else if (s.at_hi.empty()) {
      receiver = e.first;
    } else {
      continue;
    }
    for (const auto& [t, ts] : d.triangle_sets) {
      bool uses = std::count(t.begin(), t.end(), e.first) && std::count(t.begin(), t.end(), e.second);
      if (uses && !ts.empty()) throw std::logic_error("local_clean: deleting an edge under a nonempty triangle");
    }
    VertexSet moved = s.full;
    HostEdge key = e;
    d.vertex_sets[receiver] = set_union(d.vertex_sets[receiver], moved);
    d.remove_host_edge(key.first, key.second);
    return CleanStep::remove_empty_interface_edge;
  }

  for (const auto& [x, nb] : adj) {
    if (nb.size() != 1) continue;
    HostId y = nb[0];
    VertexSet moved = set_union(d.edge(x, y).full, d.vertex_set(x));
    d.vertex_sets[y] = set_union(d.vertex_sets[y], moved);
    d.vertex_sets[x].clear();
    d.remove_host_edge(x, y);
    return CleanStep::suppress_degree_one;
  }
  return std::nullopt;
}

using CleanObserver = std::function<void(CleanStep, const Esd& before, const Esd& after)>;

inline Esd local_clean(const Graph& g, Esd d, const CleanObserver& observer = {}) {
  const std::size_t cap = 4 * (d.alive.size() + d.host_vertex_count() + d.host_edge_count());
  for (std::size_t it = 0;; ++it) {
    if (it > cap) throw std::logic_error("local_clean: iteration cap exceeded");
    Esd before;
    if (observer) before = d;
    auto step = local_clean_step(g, d);
    if (!step) return d;
    if (observer) observer(*step, before, d);
  }
}

// Locally cleaned: rigid, and either one host vertex carrying everything or
// every host vertex has degree at least two. An empty base gives an empty host.
inline bool is_locally_cleaned_shape(const Esd& d) {
  if (!is_rigid(d)) return false;
  if (d.alive.empty()) return d.vertex_sets.empty();
  if (d.vertex_sets.size() == 1 && d.edge_sets.empty()) return d.vertex_sets.begin()->second == d.alive;
  auto adj = d.host_adjacency();
  return std::all_of(adj.begin(), adj.end(), [](const auto& kv) { return kv.second.size() >= 2; });
}

// ---------------------------------------------------------------------------

// Edge-set vertices reachable from v through paths whose internal vertices
// avoid all edge sets. d decomposes g − v.
inline VertexSet projection(const Graph& g, Vertex v, const Esd& d) {
  VertexSet edge_vertices;
  for (const auto& [e, s] : d.edge_sets) edge_vertices = set_union(edge_vertices, s.full);
  Membership in_alive(static_cast<std::size_t>(g.size()), d.alive);
  Membership seen(static_cast<std::size_t>(g.size()), {});
  std::vector<Vertex> out;
  std::vector<Vertex> stack{v};
  seen.insert(v);
  while (!stack.empty()) {
    Vertex a = stack.back();
    stack.pop_back();
    for (Vertex u : g.neighbors(a)) {
      if (!in_alive(u) || seen(u)) continue;
      seen.insert(u);
      if (set_contains(edge_vertices, u)) {
        out.push_back(u);
      } else {
        stack.push_back(u);
      }
    }
  }
  return make_set(std::move(out));
}

}  // namespace stmwis
