#pragma once

// ESDF, the text form of a decomposition:
//   hv <x>                      host vertex
//   he <x> <y>                  host edge
//   ht <x> <y> <z>              declared host triangle
//   ev <x>: v...                vertex set
//   ee <x> <y>: v...            edge set
//   ix <x> <y> @ <x>: v...      interface of edge xy at x
//   et <x> <y> <z>: v...        triangle set
// Sets that are not listed are empty. The decomposed set is the union of all
// listed sets.

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "esd.hpp"
#include "graph.hpp"

namespace stmwis {

class EsdfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct EsdfLine {
  std::size_t lineno;
  std::vector<std::string_view> head;  // tokens before ':'
  std::vector<std::string_view> body;  // tokens after ':'
  bool has_body;
};

inline HostId esdf_host(std::string_view tok, std::size_t lineno) {
  HostId x = 0;
  if (!parse_int(tok, x) || x < 0) throw EsdfError("bad host id '" + std::string(tok) + "'" + at_line(lineno));
  return x;
}

inline VertexSet esdf_vertices(const EsdfLine& l) {
  std::vector<Vertex> out;
  for (auto tok : l.body) {
    Vertex v = 0;
    if (!parse_int(tok, v) || v < 0) throw EsdfError("bad vertex id '" + std::string(tok) + "'" + at_line(l.lineno));
    out.push_back(v);
  }
  auto s = make_set(out);
  if (s.size() != out.size()) throw EsdfError("vertex listed twice in one set" + at_line(l.lineno));
  return s;
}

}  // namespace detail

inline Esd parse_esdf(std::string_view text) {
  std::vector<detail::EsdfLine> lines;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    detail::EsdfLine l{lineno, {}, {}, false};
    if (auto colon = line.find(':'); colon != std::string_view::npos) {
      l.head = detail::split_ws(line.substr(0, colon));
      l.body = detail::split_ws(line.substr(colon + 1));
      l.has_body = true;
    } else {
      l.head = detail::split_ws(line);
    }
    if (l.head.empty()) {
      if (l.has_body) throw EsdfError("missing record type" + detail::at_line(lineno));
      continue;
    }
    lines.push_back(std::move(l));
  }

  Esd d;
  // Declarations first so that sets may appear in any order.
  for (const auto& l : lines) {
    const auto& h = l.head;
    if (h[0] == "hv") {
      if (h.size() != 2 || l.has_body) throw EsdfError("malformed hv line" + detail::at_line(l.lineno));
      HostId x = detail::esdf_host(h[1], l.lineno);
      if (d.has_host_vertex(x)) throw EsdfError("host vertex declared twice" + detail::at_line(l.lineno));
      d.add_host_vertex(x);
    }
  }
  for (const auto& l : lines) {
    const auto& h = l.head;
    if (h[0] == "he") {
      if (h.size() != 3 || l.has_body) throw EsdfError("malformed he line" + detail::at_line(l.lineno));
      HostId x = detail::esdf_host(h[1], l.lineno);
      HostId y = detail::esdf_host(h[2], l.lineno);
      if (x == y) throw EsdfError("host self-loop" + detail::at_line(l.lineno));
      if (!d.has_host_vertex(x) || !d.has_host_vertex(y)) {
        throw EsdfError("undeclared host vertex" + detail::at_line(l.lineno));
      }
      if (d.has_host_edge(x, y)) throw EsdfError("host edge declared twice" + detail::at_line(l.lineno));
      d.add_host_edge(x, y, {}, {}, {});
    }
  }
  for (const auto& l : lines) {
    const auto& h = l.head;
    if (h[0] == "ht") {
      if (h.size() != 4 || l.has_body) throw EsdfError("malformed ht line" + detail::at_line(l.lineno));
      HostId a = detail::esdf_host(h[1], l.lineno);
      HostId b = detail::esdf_host(h[2], l.lineno);
      HostId c = detail::esdf_host(h[3], l.lineno);
      if (!d.has_host_edge(a, b) || !d.has_host_edge(b, c) || !d.has_host_edge(a, c)) {
        throw EsdfError("undeclared host edge in triangle" + detail::at_line(l.lineno));
      }
      if (d.triangle_sets.count(host_triangle(a, b, c))) {
        throw EsdfError("host triangle declared twice" + detail::at_line(l.lineno));
      }
      d.set_triangle(a, b, c, {});
    }
  }

  VertexSet seen;
  auto take = [&](const VertexSet& s, std::size_t ln) {
    if (set_intersects(seen, s)) throw EsdfError("partition violated" + detail::at_line(ln));
    seen = set_union(seen, s);
  };
  std::vector<const detail::EsdfLine*> interfaces;
  for (const auto& l : lines) {
    const auto& h = l.head;
    if (h[0] == "hv" || h[0] == "he" || h[0] == "ht") continue;
    if (!l.has_body) throw EsdfError("missing ':' in set line" + detail::at_line(l.lineno));
    if (h[0] == "ev") {
      if (h.size() != 2) throw EsdfError("malformed ev line" + detail::at_line(l.lineno));
      HostId x = detail::esdf_host(h[1], l.lineno);
      if (!d.has_host_vertex(x)) throw EsdfError("undeclared host vertex" + detail::at_line(l.lineno));
      if (!d.vertex_sets[x].empty()) throw EsdfError("vertex set given twice" + detail::at_line(l.lineno));
      auto s = detail::esdf_vertices(l);
      take(s, l.lineno);
      d.vertex_sets[x] = s;
    } else if (h[0] == "ee") {
      if (h.size() != 3) throw EsdfError("malformed ee line" + detail::at_line(l.lineno));
      HostId x = detail::esdf_host(h[1], l.lineno);
      HostId y = detail::esdf_host(h[2], l.lineno);
      if (!d.has_host_edge(x, y)) throw EsdfError("undeclared host edge" + detail::at_line(l.lineno));
      auto& e = d.edge_sets[host_edge(x, y)];
      if (!e.full.empty()) throw EsdfError("edge set given twice" + detail::at_line(l.lineno));
      auto s = detail::esdf_vertices(l);
      take(s, l.lineno);
      e.full = s;
    } else if (h[0] == "et") {
      if (h.size() != 4) throw EsdfError("malformed et line" + detail::at_line(l.lineno));
      HostTriangle t = host_triangle(detail::esdf_host(h[1], l.lineno), detail::esdf_host(h[2], l.lineno),
                                     detail::esdf_host(h[3], l.lineno));
      if (!d.has_host_edge(t[0], t[1]) || !d.has_host_edge(t[1], t[2]) || !d.has_host_edge(t[0], t[2])) {
        throw EsdfError("undeclared host edge in triangle" + detail::at_line(l.lineno));
      }
      auto& slot = d.triangle_sets[t];
      if (!slot.empty()) throw EsdfError("triangle set given twice" + detail::at_line(l.lineno));
      auto s = detail::esdf_vertices(l);
      take(s, l.lineno);
      slot = s;
    } else if (h[0] == "ix") {
      interfaces.push_back(&l);
    } else {
      throw EsdfError("unknown record type '" + std::string(h[0]) + "'" + detail::at_line(l.lineno));
    }
  }
  for (const auto* l : interfaces) {
    const auto& h = l->head;
    if (h.size() != 5 || h[3] != "@") throw EsdfError("malformed ix line" + detail::at_line(l->lineno));
    HostId x = detail::esdf_host(h[1], l->lineno);
    HostId y = detail::esdf_host(h[2], l->lineno);
    HostId at = detail::esdf_host(h[4], l->lineno);
    if (!d.has_host_edge(x, y)) throw EsdfError("undeclared host edge" + detail::at_line(l->lineno));
    if (at != x && at != y) throw EsdfError("interface endpoint not on its edge" + detail::at_line(l->lineno));
    VertexSet& slot = d.interface(x, y, at);
    if (!slot.empty()) throw EsdfError("interface given twice" + detail::at_line(l->lineno));
    auto s = detail::esdf_vertices(*l);
    if (!set_is_subset(s, d.edge(x, y).full)) {
      throw EsdfError("interface vertex not in its edge set" + detail::at_line(l->lineno));
    }
    slot = s;
  }
  d.alive = seen;
  return d;
}

namespace detail {

inline void write_set(std::ostringstream& out, const VertexSet& s) {
  out << ':';
  for (Vertex v : s) out << ' ' << v;
  out << '\n';
}

}  // namespace detail

inline std::string serialize_esdf(const Esd& d) {
  std::ostringstream out;
  for (const auto& [x, s] : d.vertex_sets) out << "hv " << x << '\n';
  for (const auto& [e, s] : d.edge_sets) out << "he " << e.first << ' ' << e.second << '\n';
  for (const auto& [t, s] : d.triangle_sets) out << "ht " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& [x, s] : d.vertex_sets) {
    if (s.empty()) continue;
    out << "ev " << x;
    detail::write_set(out, s);
  }
  for (const auto& [e, s] : d.edge_sets) {
    if (!s.full.empty()) {
      out << "ee " << e.first << ' ' << e.second;
      detail::write_set(out, s.full);
    }
    if (!s.at_lo.empty()) {
      out << "ix " << e.first << ' ' << e.second << " @ " << e.first;
      detail::write_set(out, s.at_lo);
    }
    if (!s.at_hi.empty()) {
      out << "ix " << e.first << ' ' << e.second << " @ " << e.second;
      detail::write_set(out, s.at_hi);
    }
  }
  for (const auto& [t, s] : d.triangle_sets) {
    if (s.empty()) continue;
    out << "et " << t[0] << ' ' << t[1] << ' ' << t[2];
    detail::write_set(out, s);
  }
  return out.str();
}

}  // namespace stmwis
