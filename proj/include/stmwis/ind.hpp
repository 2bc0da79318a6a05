#pragma once

// IND: exact maximum weight independent set by branching, decomposition and
// separator bookkeeping. Returns the weight only; witnesses come from
// self-reduction.
//
// Node cases, in order:
//   base      |G'| ≤ 1
//   branch    lowest-id branchable v: max(IND(G'−v), IND(G'−N[v]) + w(v))
//   type1     inferred decomposition is N-good: particles (P, ⊥, |P|, ∅, ∅)
//   bbs       N[X] splits G' finely: (G', ⊥, N, F1+X, ∅)
//   type2     decomposition from the separator procedure: (P, X, N, F1, ∅)
//   bs        core C from the separator procedure: (G', X, N, F1, F2+C)

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "decompose.hpp"
#include "diagnostics.hpp"
#include "esd.hpp"
#include "graph.hpp"
#include "oracles.hpp"
#include "particle_solve.hpp"
#include "separators.hpp"

namespace stmwis {

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class EdgeLabel { success, failure, type1_esd, type2_esd, bs, bbs };
inline constexpr std::array<const char*, 6> kEdgeLabelNames = {"success", "failure", "type1-esd",
                                                                "type2-esd", "bs", "bbs"};

enum class NodeLabel { base, branch, type1_esd, type2_esd, bs, bbs, fallback };
inline constexpr std::array<const char*, 7> kNodeLabelNames = {"base", "branch", "type1-esd", "type2-esd",
                                                               "bs", "bbs", "fallback"};

struct RecursionStats {
  std::array<std::uint64_t, 7> nodes{};
  std::array<std::uint64_t, 6> edges{};
  std::array<std::uint64_t, 6> path_max{};  // per label, the most on any root-to-leaf path
  std::uint64_t max_depth = 0;
  // Runtime checks that are counted rather than thrown.
  std::uint64_t type1_n_not_decreasing = 0;
  std::uint64_t graph_not_shrinking = 0;
  std::uint64_t proved_bound_exceeded = 0;

  std::uint64_t node_count(NodeLabel l) const { return nodes[static_cast<std::size_t>(l)]; }
  std::uint64_t edge_count(EdgeLabel l) const { return edges[static_cast<std::size_t>(l)]; }
  std::uint64_t path_count(EdgeLabel l) const { return path_max[static_cast<std::size_t>(l)]; }

  void absorb(const RecursionStats& child, EdgeLabel via) {
    for (std::size_t k = 0; k < nodes.size(); ++k) nodes[k] += child.nodes[k];
    for (std::size_t k = 0; k < edges.size(); ++k) edges[k] += child.edges[k];
    ++edges[static_cast<std::size_t>(via)];
    auto p = child.path_max;
    ++p[static_cast<std::size_t>(via)];
    for (std::size_t k = 0; k < p.size(); ++k) path_max[k] = std::max(path_max[k], p[k]);
    max_depth = std::max(max_depth, child.max_depth + 1);
    type1_n_not_decreasing += child.type1_n_not_decreasing;
    graph_not_shrinking += child.graph_not_shrinking;
    proved_bound_exceeded += child.proved_bound_exceeded;
  }

  void add(const RecursionStats& other) {
    for (std::size_t k = 0; k < nodes.size(); ++k) nodes[k] += other.nodes[k];
    for (std::size_t k = 0; k < edges.size(); ++k) edges[k] += other.edges[k];
    for (std::size_t k = 0; k < path_max.size(); ++k) path_max[k] = std::max(path_max[k], other.path_max[k]);
    max_depth = std::max(max_depth, other.max_depth);
    type1_n_not_decreasing += other.type1_n_not_decreasing;
    graph_not_shrinking += other.graph_not_shrinking;
    proved_bound_exceeded += other.proved_bound_exceeded;
  }

  // `stat base` counts base nodes; the other labels count edges.
  void write(std::ostream& out) const {
    out << "stat base=" << node_count(NodeLabel::base) << '\n';
    for (std::size_t k = 0; k < edges.size(); ++k) out << "stat " << kEdgeLabelNames[k] << '=' << edges[k] << '\n';
    out << "stat fallback=" << node_count(NodeLabel::fallback) << '\n';
    out << "stat depth=" << max_depth << '\n';
    for (std::size_t k = 0; k < path_max.size(); ++k) {
      out << "path_max " << kEdgeLabelNames[k] << '=' << path_max[k] << '\n';
    }
  }
};

struct IndResult {
  Weight weight = 0;
  RecursionStats stats;
};

namespace detail {

struct IndContext {
  const Graph& g;
  const AlgoConfig& cfg;
  const Backend& backend;
  Diagnostics& diag;
  std::int64_t n;            // vertices of the top-level graph
  std::uint64_t depth_limit;
  std::atomic<int>& spare_threads;
};

using Companion = std::shared_ptr<const Discovery>;

class IndRun {
 public:
  explicit IndRun(const IndContext& cx) : cx_(cx) {}

  IndResult node(const VertexSet& alive, Companion x, std::int64_t big_n, const FList& f1, const FList& f2,
                 std::uint64_t depth) const {
    IndResult r;
    const Graph& g = cx_.g;
    if (alive.size() <= 1) {
      r.weight = g.weight_of(alive);
      ++r.stats.nodes[static_cast<std::size_t>(NodeLabel::base)];
      return r;
    }
    if (depth > cx_.depth_limit) return fallback(alive);

    auto count1 = level_counts(g, alive, f1);
    auto count2 = level_counts(g, alive, f2);
    const std::int64_t cap = ilog(big_n);
    for (Vertex v : alive) {
      if (count1[static_cast<std::size_t>(v)] > cap || count2[static_cast<std::size_t>(v)] > cap) {
        throw InvariantViolation("level-set bound: vertex " + std::to_string(v) + " lies in too many list sets");
      }
    }

    if (auto v = find_branchable(g, alive, big_n, count1, count2)) return branch(alive, *v, x, big_n, f1, f2, depth);

    if (!x) x = std::make_shared<const Discovery>(esd_subroutine(g, alive, cx_.cfg, cx_.backend, cx_.diag));

    Esd inferred = infer_esd(g, x->x, x->esd, alive);
    const bool good = is_n_good(inferred, big_n, cx_.cfg);
    if (good) {
      ++r.stats.nodes[static_cast<std::size_t>(NodeLabel::type1_esd)];
      r.weight = combine(inferred, r.stats, EdgeLabel::type1_esd, big_n, [&](const VertexSet& p) {
        return node(p, nullptr, static_cast<std::int64_t>(p.size()), {}, {}, depth + 1);
      });
      return r;
    }

    if (is_case3_separator(g, alive, x->x, big_n, cx_.cfg)) {
      if (closed_neighborhood(g, x->x, alive).empty()) {
        throw InvariantViolation("empty boosted separator core");
      }
      ++r.stats.nodes[static_cast<std::size_t>(NodeLabel::bbs)];
      FList nf1 = f1;
      nf1.push_back(x->x);
      IndResult c = node(alive, nullptr, big_n, nf1, {}, depth + 1);
      r.weight = c.weight;
      r.stats.absorb(c.stats, EdgeLabel::bbs);
      return r;
    }

    VertexSet a = relevant(g, alive, x->x, big_n, cx_.cfg);
    if (a.empty()) {
      // Either the inferred decomposition is N-good or N[X] is a fine
      // separator; both were rejected above.
      throw InvariantViolation("relevant set empty at a separator node");
    }
    SepOrEsd s = balanced_sep_or_esd(g, alive, a, cx_.cfg.separator_depth(big_n), cx_.cfg, cx_.backend, cx_.diag);
    if (s.is_esd) {
      ++r.stats.nodes[static_cast<std::size_t>(NodeLabel::type2_esd)];
      r.weight = combine(s.esd, r.stats, EdgeLabel::type2_esd, big_n, [&](const VertexSet& p) {
        return node(p, x, big_n, f1, {}, depth + 1);
      });
      return r;
    }
    if (closed_neighborhood(g, s.core, alive).empty()) throw InvariantViolation("empty separator core");
    ++r.stats.nodes[static_cast<std::size_t>(NodeLabel::bs)];
    FList nf2 = f2;
    nf2.push_back(s.core);
    IndResult c = node(alive, x, big_n, f1, nf2, depth + 1);
    r.weight = c.weight;
    r.stats.absorb(c.stats, EdgeLabel::bs);
    return r;
  }

 private:
  IndResult fallback(const VertexSet& alive) const {
    cx_.diag.warn("depth_guard", std::to_string(alive.size()));
    IndResult r;
    r.weight = mwis_brute(cx_.g, alive).weight;
    ++r.stats.nodes[static_cast<std::size_t>(NodeLabel::fallback)];
    return r;
  }

  IndResult branch(const VertexSet& alive, Vertex v, const Companion& x, std::int64_t big_n, const FList& f1,
                   const FList& f2, std::uint64_t depth) const {
    IndResult r;
    ++r.stats.nodes[static_cast<std::size_t>(NodeLabel::branch)];
    VertexSet without_v = set_without(alive, v);
    VertexSet without_nv = set_difference(alive, closed_neighborhood(cx_.g, v, alive));
    auto fail = [&] { return node(without_v, x, big_n, f1, f2, depth + 1); };
    IndResult failure;
    IndResult success;
    if (take_thread()) {
      auto fut = std::async(std::launch::async, fail);
      success = node(without_nv, x, big_n, f1, f2, depth + 1);
      failure = fut.get();
      cx_.spare_threads.fetch_add(1);
    } else {
      failure = fail();
      success = node(without_nv, x, big_n, f1, f2, depth + 1);
    }
    r.weight = std::max(failure.weight, success.weight + cx_.g.weight(v));
    r.stats.absorb(failure.stats, EdgeLabel::failure);
    r.stats.absorb(success.stats, EdgeLabel::success);
    return r;
  }

  bool take_thread() const {
    int have = cx_.spare_threads.load();
    while (have > 0) {
      if (cx_.spare_threads.compare_exchange_weak(have, have - 1)) return true;
    }
    return false;
  }

  template <typename Solve>
  Weight combine(const Esd& d, RecursionStats& stats, EdgeLabel via, std::int64_t big_n, Solve&& solve) const {
    auto parts = particles(d);
    ParticleValues vals;
    vals.reserve(parts.size());
    const VertexSet& alive = d.alive;
    for (const auto& p : parts) {
      if (via == EdgeLabel::type1_esd && static_cast<std::int64_t>(p.members.size()) >= big_n) {
        ++stats.type1_n_not_decreasing;
      }
      if (via == EdgeLabel::type2_esd && p.members.size() >= alive.size()) ++stats.graph_not_shrinking;
      IndResult c = solve(p.members);
      vals.push_back(c.weight);
      stats.absorb(c.stats, via);
    }
    return mwis_from_particles(d, vals);
  }

  const IndContext& cx_;
};

}  // namespace detail

inline std::uint64_t depth_limit_for(std::int64_t n) {
  auto l = static_cast<std::uint64_t>(ilog(n));
  return 4 * static_cast<std::uint64_t>(std::max<std::int64_t>(n, 1)) * l * l;
}

// Compares per-path counts with the bounds proved for S_{t,t,t}-free inputs.
inline std::uint64_t proved_bound_violations(const RecursionStats& s, std::int64_t n, const AlgoConfig& cfg) {
  const long double l = static_cast<long double>(ilog(n));
  const long double c = static_cast<long double>(cfg.ct);
  struct Bound {
    EdgeLabel label;
    long double value;
  };
  const Bound bounds[] = {
      {EdgeLabel::type1_esd, 64 * std::pow(c, 2) * std::pow(l, 3)},
      {EdgeLabel::bbs, 5200 * std::pow(c, 4) * std::pow(l, 5)},
      {EdgeLabel::type2_esd, 1e7L * std::pow(c, 7) * std::pow(l, 9)},
      {EdgeLabel::bs, 1e9L * std::pow(c, 8) * std::pow(l, 11)},
      {EdgeLabel::success, 1e14L * std::pow(c, 12) * std::pow(l, 16)},
  };
  std::uint64_t bad = 0;
  for (const auto& b : bounds) {
    if (static_cast<long double>(s.path_count(b.label)) > b.value) ++bad;
  }
  if (s.path_count(EdgeLabel::failure) > static_cast<std::uint64_t>(std::max<std::int64_t>(n, 0))) ++bad;
  return bad;
}

// IND on g[alive].
inline IndResult ind_solve(const Graph& g, const VertexSet& alive, const AlgoConfig& cfg, const Backend& backend,
                           Diagnostics& diag) {
  cfg.check();
  const auto n = static_cast<std::int64_t>(alive.size());
  std::atomic<int> spare{std::max(0, cfg.jobs - 1)};
  detail::IndContext cx{g, cfg, backend, diag, n, depth_limit_for(n), spare};
  detail::IndRun run(cx);
  IndResult r = run.node(alive, nullptr, n, {}, {}, 0);
  if (!cfg.test_mode) r.stats.proved_bound_exceeded = proved_bound_violations(r.stats, n, cfg);
  return r;
}

inline IndResult ind_solve(const Graph& g, const AlgoConfig& cfg, const Backend& backend, Diagnostics& diag) {
  return ind_solve(g, g.vertices(), cfg, backend, diag);
}

// Keeps v iff every optimum of the rest uses it; `solver` maps a vertex set
// to its optimum weight.
inline VertexSet witness_by_self_reduction(const Graph& g, const VertexSet& alive,
                                           const std::function<Weight(const VertexSet&)>& solver) {
  VertexSet rest = alive;
  Weight target = solver(rest);
  std::vector<Vertex> out;
  for (Vertex v : alive) {
    if (!set_contains(rest, v)) continue;
    VertexSet without = set_without(rest, v);
    if (solver(without) == target) {
      rest = std::move(without);
      continue;
    }
    out.push_back(v);
    rest = set_difference(rest, closed_neighborhood(g, v, rest));
    target -= g.weight(v);
  }
  if (target != 0) throw std::logic_error("witness_by_self_reduction: solver is not exact");
  return make_set(std::move(out));
}

inline VertexSet witness_by_self_reduction(const Graph& g, const std::function<Weight(const VertexSet&)>& solver) {
  return witness_by_self_reduction(g, g.vertices(), solver);
}

}  // namespace stmwis
