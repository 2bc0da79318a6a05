#pragma once

// Weighted undirected simple graphs over dense vertex ids, vertex-set
// helpers, and the line-oriented graph text format.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <iterator>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stmwis {

using Vertex = std::int32_t;
using Weight = std::int64_t;

// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

inline constexpr Weight kMaxTotalWeight = Weight{1} << 62;

// ---------------------------------------------------------------------------
// Vertex-set algebra. All inputs and outputs are sorted and unique.

inline VertexSet make_set(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool set_contains(const VertexSet& s, Vertex v) {
  return std::binary_search(s.begin(), s.end(), v);
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool set_intersects(const VertexSet& a, const VertexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

inline bool set_is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline VertexSet set_with(VertexSet s, Vertex v) {
  auto it = std::lower_bound(s.begin(), s.end(), v);
  if (it == s.end() || *it != v) s.insert(it, v);
  return s;
}

inline VertexSet set_without(VertexSet s, Vertex v) {
  auto it = std::lower_bound(s.begin(), s.end(), v);
  if (it != s.end() && *it == v) s.erase(it);
  return s;
}

inline VertexSet iota_set(Vertex n) {
  VertexSet s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), Vertex{0});
  return s;
}

// Dense membership table over a fixed universe.
class Membership {
 public:
  Membership(std::size_t universe, const VertexSet& members) : in_(universe, 0) {
    for (Vertex v : members) in_[static_cast<std::size_t>(v)] = 1;
  }
  bool operator()(Vertex v) const { return in_[static_cast<std::size_t>(v)] != 0; }
  void insert(Vertex v) { in_[static_cast<std::size_t>(v)] = 1; }
  void erase(Vertex v) { in_[static_cast<std::size_t>(v)] = 0; }

 private:
  std::vector<char> in_;
};

// ---------------------------------------------------------------------------

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  Vertex u;
  Vertex v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Graph {
 public:
  Graph() = default;

  // Edgeless graph on n vertices with unit weights.
  explicit Graph(Vertex n)
      : adj_(static_cast<std::size_t>(n)), weight_(static_cast<std::size_t>(n), 1) {
    if (n < 0) throw GraphError("negative vertex count");
  }

  // Throws GraphError on self-loops, duplicates, bad ids or weight overflow.
  static Graph from_edges(Vertex n, const std::vector<Edge>& edges,
                          std::vector<Weight> weights = {}) {
    Graph g(n);
    if (!weights.empty()) {
      if (weights.size() != static_cast<std::size_t>(n)) {
        throw GraphError("weight vector length does not match vertex count");
      }
      g.weight_ = std::move(weights);
    }
    g.check_weights();
    for (const Edge& e : edges) g.insert_edge(e.u, e.v);
    g.finish();
    return g;
  }

  Vertex size() const { return static_cast<Vertex>(adj_.size()); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  Vertex degree(Vertex v) const { return static_cast<Vertex>(adj_[static_cast<std::size_t>(v)].size()); }
  Weight weight(Vertex v) const { return weight_[static_cast<std::size_t>(v)]; }
  std::span<const Weight> weights() const { return weight_; }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& a = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(a.begin(), a.end(), v);
  }

  Weight weight_of(const VertexSet& s) const {
    Weight total = 0;
    for (Vertex v : s) total += weight(v);
    return total;
  }

  // Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < size(); ++u) {
      for (Vertex v : neighbors(u)) {
        if (u < v) out.push_back({u, v});
      }
    }
    return out;
  }

  VertexSet vertices() const { return iota_set(size()); }

  // Same graph with a replaced weight vector.
  Graph with_weights(std::vector<Weight> weights) const {
    Graph g = *this;
    if (weights.size() != adj_.size()) throw GraphError("weight vector length does not match vertex count");
    g.weight_ = std::move(weights);
    g.check_weights();
    return g;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_id(Vertex v) const {
    if (v < 0 || v >= size()) throw GraphError("vertex id out of range: " + std::to_string(v));
  }

  void check_weights() const {
    Weight total = 0;
    for (Weight w : weight_) {
      if (w < 0) throw GraphError("negative weight");
      if (w >= kMaxTotalWeight - total) throw GraphError("weight overflow");
      total += w;
    }
  }

  void insert_edge(Vertex u, Vertex v) {
    check_id(u);
    check_id(v);
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
    ++edge_count_;
  }

  void finish() {
    for (Vertex u = 0; u < size(); ++u) {
      auto& a = adj_[static_cast<std::size_t>(u)];
      std::sort(a.begin(), a.end());
      if (std::adjacent_find(a.begin(), a.end()) != a.end()) {
        Vertex dup = *std::adjacent_find(a.begin(), a.end());
        throw GraphError("duplicate edge " + std::to_string(std::min(u, dup)) + " " +
                         std::to_string(std::max(u, dup)));
      }
    }
  }

  std::vector<std::vector<Vertex>> adj_;
  std::vector<Weight> weight_;
  std::size_t edge_count_ = 0;
};

// ---------------------------------------------------------------------------
// Basic queries on induced subgraphs given as (graph, alive set).

// Connected components of g[alive], each sorted, ordered by smallest member.
inline std::vector<VertexSet> components(const Graph& g, const VertexSet& alive) {
  std::vector<VertexSet> out;
  Membership unvisited(static_cast<std::size_t>(g.size()), alive);
  std::vector<Vertex> stack;
  for (Vertex s : alive) {
    if (!unvisited(s)) continue;
    VertexSet comp;
    unvisited.erase(s);
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex u : g.neighbors(v)) {
        if (unvisited(u)) {
          unvisited.erase(u);
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

// (s ∪ N(s)) ∩ within.
inline VertexSet closed_neighborhood(const Graph& g, const VertexSet& s, const VertexSet& within) {
  Membership in_within(static_cast<std::size_t>(g.size()), within);
  std::vector<Vertex> out;
  for (Vertex v : s) {
    if (in_within(v)) out.push_back(v);
    for (Vertex u : g.neighbors(v)) {
      if (in_within(u)) out.push_back(u);
    }
  }
  return make_set(std::move(out));
}

inline VertexSet closed_neighborhood(const Graph& g, Vertex v, const VertexSet& within) {
  return closed_neighborhood(g, VertexSet{v}, within);
}

inline bool is_independent(const Graph& g, const VertexSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (g.has_edge(s[i], s[j])) return false;
    }
  }
  return true;
}

inline bool is_connected(const Graph& g, const VertexSet& alive) {
  return components(g, alive).size() <= 1;
}

// Sub-weights restricted to a set: entries outside `members` are zero.
inline std::vector<Weight> indicator_weights(Vertex n, const VertexSet& members) {
  std::vector<Weight> w(static_cast<std::size_t>(n), 0);
  for (Vertex v : members) w[static_cast<std::size_t>(v)] = 1;
  return w;
}

inline Weight weight_of(std::span<const Weight> w, const VertexSet& s) {
  Weight total = 0;
  for (Vertex v : s) total += w[static_cast<std::size_t>(v)];
  return total;
}

// ---------------------------------------------------------------------------
// Graph text format:
//   # comment
//   p <n> <m>
//   w <v> <weight>      (optional, default weight 1)
//   e <u> <v>           (m lines)

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Int>
bool parse_int(std::string_view tok, Int& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

inline std::string at_line(std::size_t lineno) { return " (line " + std::to_string(lineno) + ")"; }

}  // namespace detail

inline Graph parse_graph(std::string_view text) {
  bool have_header = false;
  Vertex n = 0;
  std::int64_t m = 0;
  std::vector<Weight> weights;
  std::vector<Edge> edges;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = detail::split_ws(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tok[0] == "p") {
      if (have_header) throw GraphError("duplicate header" + detail::at_line(lineno));
      if (tok.size() != 3 || !detail::parse_int(tok[1], n) || !detail::parse_int(tok[2], m) || n < 0 || m < 0) {
        throw GraphError("malformed header" + detail::at_line(lineno));
      }
      have_header = true;
      weights.assign(static_cast<std::size_t>(n), 1);
    } else if (!have_header) {
      throw GraphError("missing header" + detail::at_line(lineno));
    } else if (tok[0] == "w") {
      Vertex v = 0;
      Weight w = 0;
      if (tok.size() != 3 || !detail::parse_int(tok[1], v)) {
        throw GraphError("malformed weight line" + detail::at_line(lineno));
      }
      if (v < 0 || v >= n) throw GraphError("vertex id out of range" + detail::at_line(lineno));
      if (!detail::parse_int(tok[2], w)) {
        // Distinguish an over-long number from garbage.
        bool digits = !tok[2].empty() &&
                      std::all_of(tok[2].begin(), tok[2].end(), [](char c) { return c >= '0' && c <= '9'; });
        throw GraphError((digits ? "weight overflow" : "malformed weight line") + detail::at_line(lineno));
      }
      if (w < 0) throw GraphError("negative weight" + detail::at_line(lineno));
      weights[static_cast<std::size_t>(v)] = w;
    } else if (tok[0] == "e") {
      Vertex u = 0;
      Vertex v = 0;
      if (tok.size() != 3 || !detail::parse_int(tok[1], u) || !detail::parse_int(tok[2], v)) {
        throw GraphError("malformed edge line" + detail::at_line(lineno));
      }
      if (u < 0 || u >= n || v < 0 || v >= n) throw GraphError("vertex id out of range" + detail::at_line(lineno));
      if (u == v) throw GraphError("self-loop" + detail::at_line(lineno));
      edges.push_back({std::min(u, v), std::max(u, v)});
    } else {
      throw GraphError("unknown line type '" + std::string(tok[0]) + "'" + detail::at_line(lineno));
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw GraphError("missing header");
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw GraphError("duplicate edge " + std::to_string(dup->u) + " " + std::to_string(dup->v));
  }
  if (static_cast<std::int64_t>(edges.size()) != m) {
    throw GraphError("edge count mismatch: header says " + std::to_string(m) + ", found " +
                     std::to_string(edges.size()));
  }
  Weight total = 0;
  for (Weight w : weights) {
    if (w >= kMaxTotalWeight - total) throw GraphError("weight overflow");
    total += w;
  }
  return Graph::from_edges(n, edges, std::move(weights));
}

inline Graph parse_graph(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_graph(std::string_view(text));
}

// Canonical form: header, non-unit weights by vertex, edges sorted with u < v.
inline std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << "p " << g.size() << ' ' << g.edge_count() << '\n';
  for (Vertex v = 0; v < g.size(); ++v) {
    if (g.weight(v) != 1) out << "w " << v << ' ' << g.weight(v) << '\n';
  }
  for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Edge-weighted instance for matching problems. Weights may be negative.

struct WeightedEdge {
  Vertex u;
  Vertex v;
  Weight w;
};

struct MatchingInstance {
  Vertex n = 0;
  std::vector<WeightedEdge> edges;
};

struct Matching {
  Weight weight = 0;
  std::vector<Edge> edges;  // u < v, sorted
};

inline std::string format_set(const VertexSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s[i]);
  }
  return out;
}

}  // namespace stmwis
