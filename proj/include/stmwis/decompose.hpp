#pragma once

// Decomposer backends and the two subroutines built on them: discovering a
// core with a decomposition of the rest, and the separator-or-decomposition
// procedure used by the balanced separator cases of IND.
//
// Backends:
//   gyarfas      cores are Gyárfás paths; never returns a decomposition
//   brute        smallest core by exhaustive search, at most 16 vertices
//   file:<path>  restricts and cleans a decomposition of the whole graph;
//                discovery falls back to gyarfas

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "esd.hpp"
#include "graph.hpp"
#include "oracles.hpp"
#include "separators.hpp"

namespace stmwis {

class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecomposeOutcome {
  enum class Kind { sttt, separator_core, esd };
  Kind kind = Kind::separator_core;
  StttEmbedding sttt;
  VertexSet core;
  Esd esd;

  static DecomposeOutcome of_core(VertexSet c) {
    DecomposeOutcome o;
    o.kind = Kind::separator_core;
    o.core = std::move(c);
    return o;
  }
  static DecomposeOutcome of_esd(Esd d) {
    DecomposeOutcome o;
    o.kind = Kind::esd;
    o.esd = std::move(d);
    return o;
  }
  static DecomposeOutcome of_sttt(StttEmbedding e) {
    DecomposeOutcome o;
    o.kind = Kind::sttt;
    o.sttt = std::move(e);
    return o;
  }
};

// A core X together with a decomposition of alive − N[X].
struct Discovery {
  VertexSet x;
  Esd esd;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string name() const = 0;
  // The core-size constant this backend claims; 0 if it makes no claim.
  virtual std::int64_t declared_ct() const { return 0; }

  // One of: an induced S_{t,t,t}; a core X whose N[X] leaves no component
  // heavier than 0.99 w(alive); a rigid decomposition of g[alive] with no
  // particle heavier than w(alive)/2.
  virtual DecomposeOutcome decompose(const Graph& g, const VertexSet& alive, std::span<const Weight> w,
                                     Diagnostics& diag) const = 0;

  // A core X and a decomposition of alive − N[X] whose particles have at
  // most |alive|/2 vertices.
  virtual Discovery discover(const Graph& g, const VertexSet& alive, Diagnostics& diag) const = 0;
};

// ---------------------------------------------------------------------------
// Verifiers

inline std::optional<std::string> check_decompose_outcome(const Graph& g, const VertexSet& alive,
                                                          std::span<const Weight> w, int t,
                                                          const DecomposeOutcome& o) {
  const i128 total = weight_of(w, alive);
  switch (o.kind) {
    case DecomposeOutcome::Kind::sttt:
      if (!set_is_subset(o.sttt.vertex_set(), alive)) return "embedding leaves the graph";
      if (!verify_sttt(g, o.sttt, t)) return "embedding is not an induced subdivided claw";
      return std::nullopt;
    case DecomposeOutcome::Kind::separator_core: {
      VertexSet sep = closed_neighborhood(g, o.core, alive);
      for (const auto& c : components(g, set_difference(alive, sep))) {
        if (100 * static_cast<i128>(weight_of(w, c)) > 99 * total) return "core leaves a heavy component";
      }
      return std::nullopt;
    }
    case DecomposeOutcome::Kind::esd: {
      if (o.esd.alive != alive) return "decomposition covers the wrong vertex set";
      if (auto v = validate_esd(g, o.esd)) return "invalid decomposition: " + v->message;
      if (!is_rigid(o.esd)) return "decomposition is not rigid";
      for (const auto& p : particles(o.esd)) {
        if (2 * static_cast<i128>(weight_of(w, p.members)) > total) return "decomposition has a heavy particle";
      }
      return std::nullopt;
    }
  }
  return "unknown outcome";
}

inline std::optional<std::string> check_discovery(const Graph& g, const VertexSet& alive, const Discovery& d) {
  VertexSet rest = set_difference(alive, closed_neighborhood(g, d.x, alive));
  if (!set_is_subset(d.x, alive)) return "core leaves the graph";
  if (d.esd.alive != rest) return "decomposition covers the wrong vertex set";
  if (auto v = validate_esd(g, d.esd)) return "invalid decomposition: " + v->message;
  for (const auto& p : particles(d.esd)) {
    if (2 * p.members.size() > alive.size()) return "decomposition has a particle over half the graph";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Backends

class GyarfasBackend : public Backend {
 public:
  std::string name() const override { return "gyarfas"; }

  DecomposeOutcome decompose(const Graph& g, const VertexSet& alive, std::span<const Weight> w,
                             Diagnostics&) const override {
    return DecomposeOutcome::of_core(make_set(gyarfas_path(g, alive, w)));
  }

  Discovery discover(const Graph& g, const VertexSet& alive, Diagnostics&) const override {
    auto unit = indicator_weights(g.size(), alive);
    VertexSet x = make_set(gyarfas_path(g, alive, unit));
    return {x, component_esd(g, set_difference(alive, closed_neighborhood(g, x, alive)))};
  }
};

namespace detail {

// Smallest subset of `pool` (lexicographically first among equal sizes)
// satisfying `ok`. The whole pool is tried last.
template <typename Pred>
VertexSet smallest_core(const VertexSet& pool, Pred&& ok) {
  const std::size_t n = pool.size();
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      VertexSet cand;
      cand.reserve(k);
      for (auto i : idx) cand.push_back(pool[i]);
      if (ok(cand)) return cand;
      // next combination
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return pool;
}

}  // namespace detail

class BruteBackend : public Backend {
 public:
  static constexpr std::size_t kLimit = 16;

  std::string name() const override { return "brute"; }

  DecomposeOutcome decompose(const Graph& g, const VertexSet& alive, std::span<const Weight> w,
                             Diagnostics& diag) const override {
    if (alive.size() > kLimit) {
      diag.warn("brute_size", std::to_string(alive.size()));
      return fallback_.decompose(g, alive, w, diag);
    }
    const i128 total = weight_of(w, alive);
    return DecomposeOutcome::of_core(detail::smallest_core(alive, [&](const VertexSet& x) {
      for (const auto& c : components(g, set_difference(alive, closed_neighborhood(g, x, alive)))) {
        if (2 * static_cast<i128>(weight_of(w, c)) > total) return false;
      }
      return true;
    }));
  }

  Discovery discover(const Graph& g, const VertexSet& alive, Diagnostics& diag) const override {
    if (alive.size() > kLimit) {
      diag.warn("brute_size", std::to_string(alive.size()));
      return fallback_.discover(g, alive, diag);
    }
    VertexSet x = detail::smallest_core(alive, [&](const VertexSet& cand) {
      for (const auto& c : components(g, set_difference(alive, closed_neighborhood(g, cand, alive)))) {
        if (2 * c.size() > alive.size()) return false;
      }
      return true;
    });
    return {x, component_esd(g, set_difference(alive, closed_neighborhood(g, x, alive)))};
  }

 private:
  GyarfasBackend fallback_;
};

class FileBackend : public Backend {
 public:
  // `whole` must be a valid decomposition of all of g.
  explicit FileBackend(Esd whole) : whole_(std::move(whole)) {}

  std::string name() const override { return "file"; }

  DecomposeOutcome decompose(const Graph& g, const VertexSet& alive, std::span<const Weight> w,
                             Diagnostics& diag) const override {
    if (!set_is_subset(alive, whole_.alive)) throw BackendError("file backend: graph not covered by the decomposition");
    Esd d = local_clean(g, restrict_esd(whole_, set_difference(whole_.alive, alive)));
    const i128 total = weight_of(w, alive);
    bool light = true;
    for (const auto& p : particles(d)) {
      if (2 * static_cast<i128>(weight_of(w, p.members)) > total) {
        light = false;
        break;
      }
    }
    if (light && is_rigid(d)) return DecomposeOutcome::of_esd(std::move(d));
    return fallback_.decompose(g, alive, w, diag);
  }

  Discovery discover(const Graph& g, const VertexSet& alive, Diagnostics& diag) const override {
    return fallback_.discover(g, alive, diag);
  }

  const Esd& whole() const { return whole_; }

 private:
  Esd whole_;
  GyarfasBackend fallback_;
};

// Parses a backend selection string: gyarfas | brute | file:<path>. The file
// form needs the decomposition already loaded; see make_file_backend.
inline std::unique_ptr<Backend> make_backend(const std::string& spec) {
  if (spec == "gyarfas") return std::make_unique<GyarfasBackend>();
  if (spec == "brute") return std::make_unique<BruteBackend>();
  throw std::invalid_argument("unknown backend '" + spec + "'");
}

// ---------------------------------------------------------------------------
// Verified entry points

inline DecomposeOutcome verified_decompose(const Graph& g, const VertexSet& alive, std::span<const Weight> w,
                                           const AlgoConfig& cfg, const Backend& backend, Diagnostics& diag) {
  DecomposeOutcome o = backend.decompose(g, alive, w, diag);
  if (auto err = check_decompose_outcome(g, alive, w, cfg.t, o)) {
    throw BackendError(backend.name() + " backend: " + *err);
  }
  if (o.kind == DecomposeOutcome::Kind::separator_core &&
      static_cast<i128>(o.core.size()) > static_cast<i128>(cfg.ct) * ilog(static_cast<std::int64_t>(alive.size()))) {
    diag.warn("core_size", std::to_string(o.core.size()));
  }
  return o;
}

inline Discovery esd_subroutine(const Graph& g, const VertexSet& alive, const AlgoConfig& cfg,
                                const Backend& backend, Diagnostics& diag) {
  Discovery d = backend.discover(g, alive, diag);
  if (auto err = check_discovery(g, alive, d)) throw BackendError(backend.name() + " backend: " + *err);
  if (static_cast<i128>(d.x.size()) > static_cast<i128>(cfg.ct) * ilog(static_cast<std::int64_t>(alive.size()))) {
    diag.warn("discovery_core_size", std::to_string(d.x.size()));
  }
  return d;
}

struct SepOrEsd {
  bool is_esd = false;
  VertexSet core;
  Esd esd;
};

// Every component of alive − N[C] has at most |A|/2^i vertices of A.
inline bool is_a_balanced(const Graph& g, const VertexSet& alive, const VertexSet& c, const VertexSet& a,
                          std::int64_t i) {
  if (i < 0 || i > 120) throw std::invalid_argument("is_a_balanced: exponent out of range");
  auto worst = static_cast<i128>(max_component_overlap(g, alive, closed_neighborhood(g, c, alive), a));
  return (worst << i) <= static_cast<i128>(a.size());
}

// No particle holds over (1 − 1/2^(i+2))|A| vertices of A.
inline bool esd_meets_a_bound(const Esd& d, const VertexSet& a, std::int64_t i) {
  if (i < 0 || i > 120) throw std::invalid_argument("esd_meets_a_bound: exponent out of range");
  const i128 scale = static_cast<i128>(1) << (i + 2);
  return static_cast<i128>(max_particle_overlap(d, a)) * scale <= (scale - 1) * static_cast<i128>(a.size());
}

inline SepOrEsd balanced_sep_or_esd(const Graph& g, const VertexSet& alive, const VertexSet& a, std::int64_t i,
                                    const AlgoConfig& cfg, const Backend& backend, Diagnostics& diag) {
  SepOrEsd out;
  if (a.empty() || is_a_balanced(g, alive, {}, a, i)) return out;

  // Returns a decomposition if the backend produced one.
  auto split_half = [&](const VertexSet& xa, VertexSet& cx) -> std::optional<Esd> {
    for (int step = 0; step < 70; ++step) {
      VertexSet sep = closed_neighborhood(g, cx, alive);
      std::optional<VertexSet> heavy;
      for (auto& y : components(g, set_difference(alive, sep))) {
        if (2 * set_intersection(y, xa).size() > xa.size()) {
          heavy = std::move(y);
          break;
        }
      }
      if (!heavy) return std::nullopt;
      VertexSet ya = set_intersection(*heavy, xa);
      auto w = indicator_weights(g.size(), ya);
      DecomposeOutcome o = verified_decompose(g, alive, w, cfg, backend, diag);
      if (o.kind == DecomposeOutcome::Kind::sttt) {
        diag.warn("sttt_outcome", format_set(o.sttt.vertex_set()));
        o = DecomposeOutcome::of_core(make_set(gyarfas_path(g, alive, w)));
      }
      if (o.kind == DecomposeOutcome::Kind::esd) return std::move(o.esd);
      cx = set_union(cx, o.core);
    }
    for (const auto& y : components(g, set_difference(alive, closed_neighborhood(g, cx, alive)))) {
      if (2 * set_intersection(y, xa).size() > xa.size()) {
        throw std::logic_error("balanced_sep_or_esd: 70 rounds did not halve a heavy component");
      }
    }
    return std::nullopt;
  };

  VertexSet c;
  for (std::int64_t j = 0; j < i; ++j) {
    if (is_a_balanced(g, alive, c, a, i)) break;
    VertexSet sep = closed_neighborhood(g, c, alive);
    VertexSet added;
    for (const auto& x : components(g, set_difference(alive, sep))) {
      VertexSet xa = set_intersection(x, a);
      if (xa.empty() || (static_cast<i128>(xa.size()) << (j + 1)) < static_cast<i128>(a.size())) continue;
      VertexSet cx;
      if (auto d = split_half(xa, cx)) {
        if (!esd_meets_a_bound(*d, a, i)) throw std::logic_error("balanced_sep_or_esd: decomposition misses the bound");
        out.is_esd = true;
        out.esd = std::move(*d);
        return out;
      }
      added = set_union(added, cx);
    }
    c = set_union(c, added);
  }
  if (!is_a_balanced(g, alive, c, a, i)) throw std::logic_error("balanced_sep_or_esd: core is not balanced");
  const i128 bound = static_cast<i128>(cfg.ct) * 70 * (static_cast<i128>(1) << (i + 1)) *
                     ilog(static_cast<std::int64_t>(alive.size()));
  if (static_cast<i128>(c.size()) > bound) diag.warn("bs_core_size", std::to_string(c.size()));
  out.core = std::move(c);
  return out;
}

}  // namespace stmwis
