#pragma once

// Combining per-particle independent set values into the value of the whole
// decomposed graph through a matching problem on the host.
//
// Gadget: the host vertices plus a dummy d_e per host edge e = xy.
//   base  = Σ_x A_x + Σ_e A_e^⊥ + Σ_T A_T
//   (x,y)   gain A_e^xy − A_x − A_y − A_e^⊥ − Σ_{xyz} A_xyz
//   (x,d_e) gain A_e^x − A_x − A_e^⊥
// A matched (x,y) takes the full edge particle, a matched (x,d_e) takes the
// half-edge particle at x, and anything untouched keeps its own particle.

#include <map>
#include <stdexcept>
#include <vector>

#include "blossom.hpp"
#include "esd.hpp"
#include "graph.hpp"

namespace stmwis {

// Values aligned with particles(d).
using ParticleValues = std::vector<Weight>;

struct Gadget {
  Weight base_value = 0;
  MatchingInstance instance;
  std::vector<HostId> host_of;  // instance vertex -> host vertex, for the first |V(H)| vertices
  std::map<HostId, Vertex> index_of;
  std::vector<HostEdge> dummy_edge;  // instance vertex |V(H)| + i is the dummy of dummy_edge[i]
};

namespace detail {

struct ParticleIndex {
  std::map<HostId, std::size_t> vertex;
  struct EdgeSlots {
    std::size_t interior, half_lo, half_hi, full;
  };
  std::map<HostEdge, EdgeSlots> edge;
  std::map<HostTriangle, std::size_t> triangle;
};

inline ParticleIndex index_particles(const std::vector<Particle>& parts) {
  ParticleIndex ix;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Particle& p = parts[i];
    switch (p.kind) {
      case ParticleKind::vertex: ix.vertex[p.anchor[0]] = i; break;
      case ParticleKind::edge_interior: ix.edge[{p.anchor[0], p.anchor[1]}].interior = i; break;
      case ParticleKind::half_edge:
        if (p.side == p.anchor[0]) {
          ix.edge[{p.anchor[0], p.anchor[1]}].half_lo = i;
        } else {
          ix.edge[{p.anchor[0], p.anchor[1]}].half_hi = i;
        }
        break;
      case ParticleKind::full_edge: ix.edge[{p.anchor[0], p.anchor[1]}].full = i; break;
      case ParticleKind::triangle: ix.triangle[{p.anchor[0], p.anchor[1], p.anchor[2]}] = i; break;
    }
  }
  return ix;
}

inline bool edge_in_triangle(HostEdge e, const HostTriangle& t) {
  return std::count(t.begin(), t.end(), e.first) && std::count(t.begin(), t.end(), e.second);
}

}  // namespace detail

inline Gadget gadget_graph(const Esd& d, const std::vector<Particle>& parts, const ParticleValues& vals) {
  if (vals.size() != parts.size()) throw std::invalid_argument("gadget_graph: missing particle value");
  auto ix = detail::index_particles(parts);
  auto val = [&](std::size_t i) { return vals[i]; };
  Gadget gd;
  for (const auto& [x, s] : d.vertex_sets) {
    gd.index_of[x] = static_cast<Vertex>(gd.host_of.size());
    gd.host_of.push_back(x);
    gd.base_value += val(ix.vertex.at(x));
  }
  for (const auto& [e, slots] : ix.edge) gd.base_value += val(slots.interior);
  for (const auto& [t, i] : ix.triangle) gd.base_value += val(i);

  const auto nh = static_cast<Vertex>(gd.host_of.size());
  gd.instance.n = nh + static_cast<Vertex>(ix.edge.size());
  for (const auto& [e, slots] : ix.edge) {
    auto [x, y] = e;
    Weight ax = val(ix.vertex.at(x));
    Weight ay = val(ix.vertex.at(y));
    Weight inner = val(slots.interior);
    Weight full_gain = val(slots.full) - ax - ay - inner;
    for (const auto& [t, i] : ix.triangle) {
      if (detail::edge_in_triangle(e, t)) full_gain -= val(i);
    }
    Vertex dummy = nh + static_cast<Vertex>(gd.dummy_edge.size());
    gd.dummy_edge.push_back(e);
    gd.instance.edges.push_back({gd.index_of.at(x), gd.index_of.at(y), full_gain});
    gd.instance.edges.push_back({gd.index_of.at(x), dummy, val(slots.half_lo) - ax - inner});
    gd.instance.edges.push_back({gd.index_of.at(y), dummy, val(slots.half_hi) - ay - inner});
  }
  return gd;
}

inline Gadget gadget_graph(const Esd& d, const ParticleValues& vals) { return gadget_graph(d, particles(d), vals); }

inline Weight mwis_from_particles(const Esd& d, const ParticleValues& vals) {
  Gadget gd = gadget_graph(d, vals);
  return gd.base_value + max_weight_matching(gd.instance).weight;
}

// Computes the particle values with `solve` and combines them.
template <typename Solve>
Weight mwis_from_particles_with(const Esd& d, Solve&& solve) {
  auto parts = particles(d);
  ParticleValues vals;
  vals.reserve(parts.size());
  for (const auto& p : parts) vals.push_back(solve(p.members));
  Gadget gd = gadget_graph(d, parts, vals);
  return gd.base_value + max_weight_matching(gd.instance).weight;
}

// Which particle each gadget state selects; witnesses[i] is an independent
// set of particle i. The union is independent in g.
inline VertexSet reconstruct_independent_set(const std::vector<Particle>& parts,
                                             const std::vector<VertexSet>& witnesses, const Gadget& gd,
                                             const Matching& m) {
  auto ix = detail::index_particles(parts);
  const auto nh = static_cast<Vertex>(gd.host_of.size());
  std::map<HostId, bool> host_used;
  std::map<HostEdge, int> edge_state;  // 0 untouched, 1 full, 2 half at lo, 3 half at hi
  for (const Edge& me : m.edges) {
    Vertex a = me.u;
    Vertex b = me.v;
    if (a < nh && b < nh) {
      HostId x = gd.host_of[static_cast<std::size_t>(a)];
      HostId y = gd.host_of[static_cast<std::size_t>(b)];
      host_used[x] = host_used[y] = true;
      edge_state[host_edge(x, y)] = 1;
    } else {
      Vertex h = std::min(a, b);
      Vertex dummy = std::max(a, b);
      HostId x = gd.host_of[static_cast<std::size_t>(h)];
      HostEdge e = gd.dummy_edge[static_cast<std::size_t>(dummy - nh)];
      host_used[x] = true;
      edge_state[e] = x == e.first ? 2 : 3;
    }
  }
  VertexSet out;
  for (const auto& [x, i] : ix.vertex) {
    if (!host_used[x]) out = set_union(out, witnesses[i]);
  }
  for (const auto& [e, slots] : ix.edge) {
    switch (edge_state[e]) {
      case 0: out = set_union(out, witnesses[slots.interior]); break;
      case 1: out = set_union(out, witnesses[slots.full]); break;
      case 2: out = set_union(out, witnesses[slots.half_lo]); break;
      default: out = set_union(out, witnesses[slots.half_hi]); break;
    }
  }
  for (const auto& [t, i] : ix.triangle) {
    bool touched = edge_state[host_edge(t[0], t[1])] == 1 || edge_state[host_edge(t[1], t[2])] == 1 ||
                   edge_state[host_edge(t[0], t[2])] == 1;
    if (!touched) out = set_union(out, witnesses[i]);
  }
  return out;
}

}  // namespace stmwis
