#pragma once

// Exponential-time reference implementations. They are deliberately simple
// and share no code with the polynomial modules they check.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace stmwis {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IndependentSet {
  Weight weight = 0;
  VertexSet vertices;
};

inline constexpr std::size_t kMwisBruteBudget = 26;
inline constexpr Vertex kMwmBruteBudget = 12;

namespace detail {

struct MwisSearch {
  std::vector<std::uint32_t> adj;  // local adjacency masks
  std::vector<Weight> w;
  Weight best = -1;
  std::uint32_t best_mask = 0;

  static bool lex_smaller(std::uint32_t a, std::uint32_t b) {
    // Compare as sorted index lists.
    while (a != 0 && b != 0) {
      int ia = std::countr_zero(a);
      int ib = std::countr_zero(b);
      if (ia != ib) return ia < ib;
      a &= a - 1;
      b &= b - 1;
    }
    return a == 0 && b != 0;
  }

  void run(std::uint32_t chosen, std::uint32_t cand, Weight value) {
    if (cand == 0) {
      if (value > best || (value == best && lex_smaller(chosen, best_mask))) {
        best = value;
        best_mask = chosen;
      }
      return;
    }
    Weight bound = value;
    for (std::uint32_t c = cand; c != 0; c &= c - 1) bound += w[static_cast<std::size_t>(std::countr_zero(c))];
    if (bound < best) return;
    int v = std::countr_zero(cand);
    std::uint32_t bit = std::uint32_t{1} << v;
    run(chosen | bit, cand & ~bit & ~adj[static_cast<std::size_t>(v)], value + w[static_cast<std::size_t>(v)]);
    run(chosen, cand & ~bit, value);
  }
};

}  // namespace detail

// Maximum weight independent set of g[alive]. Ties go to the
// lexicographically smallest vertex list.
inline IndependentSet mwis_brute(const Graph& g, const VertexSet& alive,
                                 std::size_t budget = kMwisBruteBudget) {
  if (alive.size() > budget || alive.size() > 31) {
    throw BudgetExceeded("mwis_brute: " + std::to_string(alive.size()) + " vertices exceeds budget " +
                         std::to_string(budget));
  }
  detail::MwisSearch s;
  const std::size_t k = alive.size();
  s.adj.assign(k, 0);
  s.w.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    s.w[i] = g.weight(alive[i]);
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j && g.has_edge(alive[i], alive[j])) s.adj[i] |= std::uint32_t{1} << j;
    }
  }
  std::uint32_t all = k == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << k) - 1;
  s.run(0, all, 0);
  IndependentSet out;
  out.weight = s.best;
  for (std::size_t i = 0; i < k; ++i) {
    if (s.best_mask >> i & 1U) out.vertices.push_back(alive[i]);
  }
  return out;
}

inline IndependentSet mwis_brute(const Graph& g) { return mwis_brute(g, g.vertices()); }

// Maximum weight matching by dynamic programming over vertex subsets.
// Non-positive edges are never taken.
inline Matching mwm_brute(const MatchingInstance& inst, Vertex budget = kMwmBruteBudget) {
  if (inst.n > budget || inst.n > 20) {
    throw BudgetExceeded("mwm_brute: " + std::to_string(inst.n) + " vertices exceeds budget " +
                         std::to_string(budget));
  }
  const auto n = static_cast<std::size_t>(inst.n);
  // Best positive weight per unordered pair; keeps the first index on ties.
  std::vector<std::vector<Weight>> wt(n, std::vector<Weight>(n, 0));
  std::vector<std::vector<int>> has(n, std::vector<int>(n, 0));
  for (const auto& e : inst.edges) {
    auto u = static_cast<std::size_t>(e.u);
    auto v = static_cast<std::size_t>(e.v);
    if (u == v) continue;
    if (!has[u][v] || e.w > wt[u][v]) {
      wt[u][v] = wt[v][u] = e.w;
      has[u][v] = has[v][u] = 1;
    }
  }
  const std::size_t full = std::size_t{1} << n;
  std::vector<Weight> f(full, 0);
  std::vector<int> partner(full, -1);
  for (std::size_t mask = 1; mask < full; ++mask) {
    auto v = static_cast<std::size_t>(std::countr_zero(mask));
    std::size_t rest = mask & ~(std::size_t{1} << v);
    f[mask] = f[rest];
    partner[mask] = -1;
    for (std::size_t r = rest; r != 0; r &= r - 1) {
      auto u = static_cast<std::size_t>(std::countr_zero(r));
      if (!has[v][u] || wt[v][u] <= 0) continue;
      Weight cand = wt[v][u] + f[rest & ~(std::size_t{1} << u)];
      if (cand > f[mask]) {
        f[mask] = cand;
        partner[mask] = static_cast<int>(u);
      }
    }
  }
  Matching out;
  out.weight = f[full - 1];
  std::size_t mask = full - 1;
  while (mask != 0) {
    auto v = static_cast<std::size_t>(std::countr_zero(mask));
    int u = partner[mask];
    mask &= ~(std::size_t{1} << v);
    if (u >= 0) {
      mask &= ~(std::size_t{1} << u);
      out.edges.push_back({static_cast<Vertex>(std::min<std::size_t>(v, static_cast<std::size_t>(u))),
                           static_cast<Vertex>(std::max<std::size_t>(v, static_cast<std::size_t>(u)))});
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

inline Matching mwm_brute(const Graph& g, const std::map<Edge, Weight>& edge_weights,
                          Vertex budget = kMwmBruteBudget) {
  MatchingInstance inst;
  inst.n = g.size();
  for (const Edge& e : g.edges()) {
    auto it = edge_weights.find(e);
    inst.edges.push_back({e.u, e.v, it == edge_weights.end() ? Weight{0} : it->second});
  }
  return mwm_brute(inst, budget);
}

// ---------------------------------------------------------------------------
// Induced subdivided claws.

struct StttEmbedding {
  Vertex center = -1;
  std::array<std::vector<Vertex>, 3> legs;

  VertexSet vertex_set() const {
    std::vector<Vertex> all{center};
    for (const auto& leg : legs) all.insert(all.end(), leg.begin(), leg.end());
    return make_set(std::move(all));
  }
};

// Re-checks an embedding against the adjacency of g, pair by pair.
inline bool verify_sttt(const Graph& g, const StttEmbedding& e, int t) {
  if (t < 1) return false;
  std::vector<Vertex> order{e.center};
  std::vector<std::pair<int, int>> pos{{-1, 0}};  // (leg, index)
  for (int l = 0; l < 3; ++l) {
    if (static_cast<int>(e.legs[static_cast<std::size_t>(l)].size()) != t) return false;
    for (int i = 0; i < t; ++i) {
      order.push_back(e.legs[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)]);
      pos.push_back({l, i});
    }
  }
  for (Vertex v : order) {
    if (v < 0 || v >= g.size()) return false;
  }
  if (make_set(order).size() != order.size()) return false;
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      auto [la, ia] = pos[a];
      auto [lb, ib] = pos[b];
      bool want;
      if (la == -1) {
        want = ib == 0;
      } else {
        want = la == lb && (ia - ib == 1 || ib - ia == 1);
      }
      if (g.has_edge(order[a], order[b]) != want) return false;
    }
  }
  return true;
}

inline constexpr std::size_t kSttSearchBudget = 40;

namespace detail {

class SttSearch {
 public:
  SttSearch(const Graph& g, const VertexSet& alive, int t)
      : g_(g), in_alive_(static_cast<std::size_t>(g.size()), alive), t_(t) {}

  std::optional<StttEmbedding> run(const VertexSet& alive) {
    for (Vertex c : alive) {
      std::vector<Vertex> heads;
      for (Vertex u : g_.neighbors(c)) {
        if (in_alive_(u)) heads.push_back(u);
      }
      for (std::size_t i = 0; i < heads.size(); ++i) {
        for (std::size_t j = i + 1; j < heads.size(); ++j) {
          if (g_.has_edge(heads[i], heads[j])) continue;
          for (std::size_t k = j + 1; k < heads.size(); ++k) {
            if (g_.has_edge(heads[i], heads[k]) || g_.has_edge(heads[j], heads[k])) continue;
            emb_.center = c;
            emb_.legs = {std::vector<Vertex>{heads[i]}, std::vector<Vertex>{heads[j]},
                         std::vector<Vertex>{heads[k]}};
            placed_ = {c, heads[i], heads[j], heads[k]};
            if (grow(0)) return emb_;
          }
        }
      }
    }
    return std::nullopt;
  }

 private:
  bool grow(int leg) {
    if (leg == 3) return true;
    auto& path = emb_.legs[static_cast<std::size_t>(leg)];
    if (static_cast<int>(path.size()) == t_) return grow(leg + 1);
    Vertex last = path.back();
    for (Vertex x : g_.neighbors(last)) {
      if (!in_alive_(x) || std::find(placed_.begin(), placed_.end(), x) != placed_.end()) continue;
      // x may touch nothing placed except its predecessor.
      bool ok = true;
      for (Vertex p : placed_) {
        if (p != last && g_.has_edge(x, p)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      path.push_back(x);
      placed_.push_back(x);
      if (grow(leg)) return true;
      path.pop_back();
      placed_.pop_back();
    }
    return false;
  }

  const Graph& g_;
  Membership in_alive_;
  int t_;
  StttEmbedding emb_;
  std::vector<Vertex> placed_;
};

}  // namespace detail

// Exhaustive search for an induced S_{t,t,t} in g[alive].
inline std::optional<StttEmbedding> find_induced_sttt(const Graph& g, const VertexSet& alive, int t,
                                                      std::size_t budget = kSttSearchBudget) {
  if (t < 1) throw std::invalid_argument("find_induced_sttt: t must be at least 1");
  if (alive.size() > budget) {
    throw BudgetExceeded("find_induced_sttt: " + std::to_string(alive.size()) + " vertices exceeds budget " +
                         std::to_string(budget));
  }
  if (alive.size() < static_cast<std::size_t>(3 * t + 1)) return std::nullopt;
  return detail::SttSearch(g, alive, t).run(alive);
}

inline std::optional<StttEmbedding> find_induced_sttt(const Graph& g, int t,
                                                      std::size_t budget = kSttSearchBudget) {
  return find_induced_sttt(g, g.vertices(), t, budget);
}

}  // namespace stmwis
