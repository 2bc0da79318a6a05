#pragma once

// Maximum weight matching on general graphs, O(n^3) primal-dual blossom
// algorithm (Edmonds; Galil's presentation). The structure follows the well
// known reference implementation by J. van Rantwijk. Only edges of positive
// weight are fed to the solver, so the result is a maximum weight matching
// over all matchings, not a maximum cardinality one.

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace stmwis {

namespace detail {

class Blossom {
 public:
  Blossom(int nvertex, std::vector<WeightedEdge> edges) : nv_(nvertex), edges_(std::move(edges)) {}

  // mate[v] = matched vertex or -1
  std::vector<int> solve() {
    const int nedge = static_cast<int>(edges_.size());
    if (nedge == 0 || nv_ == 0) return std::vector<int>(static_cast<std::size_t>(nv_), -1);
    Weight maxweight = 0;
    for (const auto& e : edges_) maxweight = std::max(maxweight, e.w);
    endpoint_.resize(2 * static_cast<std::size_t>(nedge));
    for (int p = 0; p < 2 * nedge; ++p) {
      const auto& e = edges_[static_cast<std::size_t>(p / 2)];
      endpoint_[static_cast<std::size_t>(p)] = p % 2 == 0 ? e.u : e.v;
    }
    neighbend_.assign(static_cast<std::size_t>(nv_), {});
    for (int k = 0; k < nedge; ++k) {
      const auto& e = edges_[static_cast<std::size_t>(k)];
      neighbend_[static_cast<std::size_t>(e.u)].push_back(2 * k + 1);
      neighbend_[static_cast<std::size_t>(e.v)].push_back(2 * k);
    }
    const std::size_t n2 = 2 * static_cast<std::size_t>(nv_);
    mate_.assign(static_cast<std::size_t>(nv_), -1);
    label_.assign(n2, 0);
    labelend_.assign(n2, -1);
    inblossom_.resize(static_cast<std::size_t>(nv_));
    for (int v = 0; v < nv_; ++v) inblossom_[static_cast<std::size_t>(v)] = v;
    blossomparent_.assign(n2, -1);
    blossomchilds_.assign(n2, {});
    blossombase_.assign(n2, -1);
    for (int v = 0; v < nv_; ++v) blossombase_[static_cast<std::size_t>(v)] = v;
    blossomendps_.assign(n2, {});
    bestedge_.assign(n2, -1);
    blossombestedges_.assign(n2, {});
    has_bestedges_.assign(n2, 0);
    unused_.clear();
    for (int b = nv_; b < 2 * nv_; ++b) unused_.push_back(b);
    dualvar_.assign(n2, 0);
    for (int v = 0; v < nv_; ++v) dualvar_[static_cast<std::size_t>(v)] = maxweight;
    allowedge_.assign(static_cast<std::size_t>(nedge), 0);

    for (int stage = 0; stage < nv_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (std::size_t b = static_cast<std::size_t>(nv_); b < n2; ++b) {
        blossombestedges_[b].clear();
        has_bestedges_[b] = 0;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), 0);
      queue_.clear();
      for (int v = 0; v < nv_; ++v) {
        if (mate_[idx(v)] == -1 && label_[idx(inblossom_[idx(v)])] == 0) assign_label(v, 1, -1);
      }
      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          int v = queue_.back();
          queue_.pop_back();
          for (int p : neighbend_[idx(v)]) {
            int k = p / 2;
            int w = endpoint_[idx(p)];
            if (inblossom_[idx(v)] == inblossom_[idx(w)]) continue;
            Weight kslack = 0;
            if (!allowedge_[idx(k)]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[idx(k)] = 1;
            }
            if (allowedge_[idx(k)]) {
              if (label_[idx(inblossom_[idx(w)])] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[idx(inblossom_[idx(w)])] == 1) {
                int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[idx(w)] == 0) {
                label_[idx(w)] = 2;
                labelend_[idx(w)] = p ^ 1;
              }
            } else if (label_[idx(inblossom_[idx(w)])] == 1) {
              int b = inblossom_[idx(v)];
              if (bestedge_[idx(b)] == -1 || kslack < slack(bestedge_[idx(b)])) bestedge_[idx(b)] = k;
            } else if (label_[idx(w)] == 0) {
              if (bestedge_[idx(w)] == -1 || kslack < slack(bestedge_[idx(w)])) bestedge_[idx(w)] = k;
            }
          }
        }
        if (augmented) break;

        // Dual adjustment. Type 1 (a vertex dual reaches zero) ends the stage.
        int deltatype = 1;
        Weight delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + nv_);
        int deltaedge = -1;
        int deltablossom = -1;
        for (int v = 0; v < nv_; ++v) {
          if (label_[idx(inblossom_[idx(v)])] == 0 && bestedge_[idx(v)] != -1) {
            Weight d = slack(bestedge_[idx(v)]);
            if (d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[idx(v)];
            }
          }
        }
        for (int b = 0; b < 2 * nv_; ++b) {
          if (blossomparent_[idx(b)] == -1 && label_[idx(b)] == 1 && bestedge_[idx(b)] != -1) {
            Weight d = slack(bestedge_[idx(b)]) / 2;
            if (d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[idx(b)];
            }
          }
        }
        for (int b = nv_; b < 2 * nv_; ++b) {
          if (blossombase_[idx(b)] >= 0 && blossomparent_[idx(b)] == -1 && label_[idx(b)] == 2 &&
              dualvar_[idx(b)] < delta) {
            delta = dualvar_[idx(b)];
            deltatype = 4;
            deltablossom = b;
          }
        }
        for (int v = 0; v < nv_; ++v) {
          int l = label_[idx(inblossom_[idx(v)])];
          if (l == 1) {
            dualvar_[idx(v)] -= delta;
          } else if (l == 2) {
            dualvar_[idx(v)] += delta;
          }
        }
        for (int b = nv_; b < 2 * nv_; ++b) {
          if (blossombase_[idx(b)] >= 0 && blossomparent_[idx(b)] == -1) {
            if (label_[idx(b)] == 1) {
              dualvar_[idx(b)] += delta;
            } else if (label_[idx(b)] == 2) {
              dualvar_[idx(b)] -= delta;
            }
          }
        }
        if (deltatype == 1) break;
        if (deltatype == 2) {
          allowedge_[idx(deltaedge)] = 1;
          int i = edges_[idx(deltaedge)].u;
          int j = edges_[idx(deltaedge)].v;
          if (label_[idx(inblossom_[idx(i)])] == 0) std::swap(i, j);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[idx(deltaedge)] = 1;
          queue_.push_back(edges_[idx(deltaedge)].u);
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) break;
      for (int b = nv_; b < 2 * nv_; ++b) {
        if (blossomparent_[idx(b)] == -1 && blossombase_[idx(b)] >= 0 && label_[idx(b)] == 1 &&
            dualvar_[idx(b)] == 0) {
          expand_blossom(b, true);
        }
      }
    }
    std::vector<int> out(static_cast<std::size_t>(nv_), -1);
    for (int v = 0; v < nv_; ++v) {
      if (mate_[idx(v)] >= 0) out[idx(v)] = endpoint_[idx(mate_[idx(v)])];
    }
    return out;
  }

 private:
  static std::size_t idx(int i) { return static_cast<std::size_t>(i); }

  Weight slack(int k) const {
    const auto& e = edges_[idx(k)];
    return dualvar_[idx(e.u)] + dualvar_[idx(e.v)] - 2 * e.w;
  }

  void leaves(int b, std::vector<int>& out) const {
    if (b < nv_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[idx(b)]) leaves(t, out);
  }

  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p) {
    int b = inblossom_[idx(w)];
    label_[idx(w)] = label_[idx(b)] = t;
    labelend_[idx(w)] = labelend_[idx(b)] = p;
    bestedge_[idx(w)] = bestedge_[idx(b)] = -1;
    if (t == 1) {
      leaves(b, queue_);
    } else if (t == 2) {
      int base = blossombase_[idx(b)];
      assign_label(endpoint_[idx(mate_[idx(base)])], 1, mate_[idx(base)] ^ 1);
    }
  }

  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[idx(v)];
      if (label_[idx(b)] & 4) {
        base = blossombase_[idx(b)];
        break;
      }
      path.push_back(b);
      label_[idx(b)] = 5;
      if (labelend_[idx(b)] == -1) {
        v = -1;
      } else {
        v = endpoint_[idx(labelend_[idx(b)])];
        b = inblossom_[idx(v)];
        v = endpoint_[idx(labelend_[idx(b)])];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[idx(b)] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = edges_[idx(k)].u;
    int w = edges_[idx(k)].v;
    int bb = inblossom_[idx(base)];
    int bv = inblossom_[idx(v)];
    int bw = inblossom_[idx(w)];
    int b = unused_.back();
    unused_.pop_back();
    blossombase_[idx(b)] = base;
    blossomparent_[idx(b)] = -1;
    blossomparent_[idx(bb)] = b;
    std::vector<int> path;
    std::vector<int> endps;
    while (bv != bb) {
      blossomparent_[idx(bv)] = b;
      path.push_back(bv);
      endps.push_back(labelend_[idx(bv)]);
      v = endpoint_[idx(labelend_[idx(bv)])];
      bv = inblossom_[idx(v)];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[idx(bw)] = b;
      path.push_back(bw);
      endps.push_back(labelend_[idx(bw)] ^ 1);
      w = endpoint_[idx(labelend_[idx(bw)])];
      bw = inblossom_[idx(w)];
    }
    blossomchilds_[idx(b)] = path;
    blossomendps_[idx(b)] = endps;
    label_[idx(b)] = 1;
    labelend_[idx(b)] = labelend_[idx(bb)];
    dualvar_[idx(b)] = 0;
    for (int leaf : leaves(b)) {
      if (label_[idx(inblossom_[idx(leaf)])] == 2) queue_.push_back(leaf);
      inblossom_[idx(leaf)] = b;
    }
    std::vector<int> bestedgeto(2 * idx(nv_), -1);
    for (int sub : path) {
      std::vector<std::vector<int>> nblists;
      if (!has_bestedges_[idx(sub)]) {
        for (int leaf : leaves(sub)) {
          std::vector<int> ks;
          for (int p : neighbend_[idx(leaf)]) ks.push_back(p / 2);
          nblists.push_back(std::move(ks));
        }
      } else {
        nblists.push_back(blossombestedges_[idx(sub)]);
      }
      for (const auto& nblist : nblists) {
        for (int kk : nblist) {
          int i = edges_[idx(kk)].u;
          int j = edges_[idx(kk)].v;
          if (inblossom_[idx(j)] == b) std::swap(i, j);
          int bj = inblossom_[idx(j)];
          if (bj != b && label_[idx(bj)] == 1 &&
              (bestedgeto[idx(bj)] == -1 || slack(kk) < slack(bestedgeto[idx(bj)]))) {
            bestedgeto[idx(bj)] = kk;
          }
        }
      }
      blossombestedges_[idx(sub)].clear();
      has_bestedges_[idx(sub)] = 0;
      bestedge_[idx(sub)] = -1;
    }
    auto& mine = blossombestedges_[idx(b)];
    mine.clear();
    for (int kk : bestedgeto) {
      if (kk != -1) mine.push_back(kk);
    }
    has_bestedges_[idx(b)] = 1;
    bestedge_[idx(b)] = -1;
    for (int kk : mine) {
      if (bestedge_[idx(b)] == -1 || slack(kk) < slack(bestedge_[idx(b)])) bestedge_[idx(b)] = kk;
    }
  }

  void expand_blossom(int b, bool endstage) {
    for (int s : blossomchilds_[idx(b)]) {
      blossomparent_[idx(s)] = -1;
      if (s < nv_) {
        inblossom_[idx(s)] = s;
      } else if (endstage && dualvar_[idx(s)] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (int leaf : leaves(s)) inblossom_[idx(leaf)] = s;
      }
    }
    if (!endstage && label_[idx(b)] == 2) {
      const auto& childs = blossomchilds_[idx(b)];
      const auto& endps = blossomendps_[idx(b)];
      const int len = static_cast<int>(childs.size());
      auto at = [len](int j) { return static_cast<std::size_t>(((j % len) + len) % len); };
      int entrychild = inblossom_[idx(endpoint_[idx(labelend_[idx(b)] ^ 1)])];
      int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
      int jstep;
      int endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[idx(b)];
      while (j != 0) {
        label_[idx(endpoint_[idx(p ^ 1)])] = 0;
        label_[idx(endpoint_[idx(endps[at(j - endptrick)] ^ endptrick ^ 1)])] = 0;
        assign_label(endpoint_[idx(p ^ 1)], 2, p);
        allowedge_[idx(endps[at(j - endptrick)] / 2)] = 1;
        j += jstep;
        p = endps[at(j - endptrick)] ^ endptrick;
        allowedge_[idx(p / 2)] = 1;
        j += jstep;
      }
      int bv = childs[at(j)];
      label_[idx(endpoint_[idx(p ^ 1)])] = label_[idx(bv)] = 2;
      labelend_[idx(endpoint_[idx(p ^ 1)])] = labelend_[idx(bv)] = p;
      bestedge_[idx(bv)] = -1;
      j += jstep;
      while (childs[at(j)] != entrychild) {
        bv = childs[at(j)];
        if (label_[idx(bv)] == 1) {
          j += jstep;
          continue;
        }
        int found = -1;
        for (int leaf : leaves(bv)) {
          if (label_[idx(leaf)] != 0) {
            found = leaf;
            break;
          }
        }
        if (found != -1) {
          label_[idx(found)] = 0;
          label_[idx(endpoint_[idx(mate_[idx(blossombase_[idx(bv)])])])] = 0;
          assign_label(found, 2, labelend_[idx(found)]);
        }
        j += jstep;
      }
    }
    label_[idx(b)] = labelend_[idx(b)] = -1;
    blossomchilds_[idx(b)].clear();
    blossomendps_[idx(b)].clear();
    blossombase_[idx(b)] = -1;
    blossombestedges_[idx(b)].clear();
    has_bestedges_[idx(b)] = 0;
    bestedge_[idx(b)] = -1;
    unused_.push_back(b);
  }

  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[idx(t)] != b) t = blossomparent_[idx(t)];
    if (t >= nv_) augment_blossom(t, v);
    auto& childs = blossomchilds_[idx(b)];
    auto& endps = blossomendps_[idx(b)];
    const int len = static_cast<int>(childs.size());
    auto at = [len](int j) { return static_cast<std::size_t>(((j % len) + len) % len); };
    const int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = childs[at(j)];
      int p = endps[at(j - endptrick)] ^ endptrick;
      if (t >= nv_) augment_blossom(t, endpoint_[idx(p)]);
      j += jstep;
      t = childs[at(j)];
      if (t >= nv_) augment_blossom(t, endpoint_[idx(p ^ 1)]);
      mate_[idx(endpoint_[idx(p)])] = p ^ 1;
      mate_[idx(endpoint_[idx(p ^ 1)])] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[idx(b)] = blossombase_[idx(childs[0])];
  }

  void augment_matching(int k) {
    const int v = edges_[idx(k)].u;
    const int w = edges_[idx(k)].v;
    const std::pair<int, int> starts[2] = {{v, 2 * k + 1}, {w, 2 * k}};
    for (auto [s, p] : starts) {
      while (true) {
        int bs = inblossom_[idx(s)];
        if (bs >= nv_) augment_blossom(bs, s);
        mate_[idx(s)] = p;
        if (labelend_[idx(bs)] == -1) break;
        int t = endpoint_[idx(labelend_[idx(bs)])];
        int bt = inblossom_[idx(t)];
        s = endpoint_[idx(labelend_[idx(bt)])];
        int j = endpoint_[idx(labelend_[idx(bt)] ^ 1)];
        if (bt >= nv_) augment_blossom(bt, j);
        mate_[idx(j)] = labelend_[idx(bt)];
        p = labelend_[idx(bt)] ^ 1;
      }
    }
  }

  int nv_;
  std::vector<WeightedEdge> edges_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_, bestedge_, unused_, queue_;
  std::vector<std::vector<int>> blossomchilds_, blossomendps_, blossombestedges_;
  std::vector<char> has_bestedges_;
  std::vector<Weight> dualvar_;
  std::vector<char> allowedge_;
};

}  // namespace detail

inline Matching max_weight_matching(const MatchingInstance& inst) {
  // Keep the heaviest copy of each pair; drop edges that can never help.
  std::map<Edge, Weight> best;
  for (const auto& e : inst.edges) {
    if (e.u == e.v || e.w <= 0) continue;
    Edge key{std::min(e.u, e.v), std::max(e.u, e.v)};
    auto [it, fresh] = best.emplace(key, e.w);
    if (!fresh && e.w > it->second) it->second = e.w;
  }
  std::vector<WeightedEdge> edges;
  edges.reserve(best.size());
  for (const auto& [key, w] : best) edges.push_back({key.u, key.v, w});
  auto mate = detail::Blossom(inst.n, edges).solve();
  Matching out;
  for (Vertex v = 0; v < inst.n; ++v) {
    Vertex u = mate[static_cast<std::size_t>(v)];
    if (u > v) {
      out.edges.push_back({v, u});
      out.weight += best.at(Edge{v, u});
    }
  }
  return out;
}

}  // namespace stmwis
