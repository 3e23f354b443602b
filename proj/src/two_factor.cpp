// Copyright 2026 The fracchrom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fracchrom/two_factor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace fracchrom {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

std::string edge_str(Edge e) { return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")"; }

}  // namespace

void TwoFactor::index() {
  int n = static_cast<int>(mate_.size());
  cycle_of_.assign(n, -1);
  pos_.assign(n, -1);
  for (int c = 0; c < num_cycles(); ++c)
    for (int i = 0; i < cycle_length(c); ++i) {
      Vertex v = cycles_[c][i];
      if (v < 0 || v >= n) throw PreconditionError("cycle vertex " + std::to_string(v) + " out of range");
      if (cycle_of_[v] != -1) throw PreconditionError("vertex " + std::to_string(v) + " lies on two cycles");
      cycle_of_[v] = c;
      pos_[v] = i;
    }
  for (Vertex v = 0; v < n; ++v)
    if (cycle_of_[v] == -1) throw PreconditionError("vertex " + std::to_string(v) + " is on no cycle");
}

TwoFactor TwoFactor::from_matching(const Graph& g, const std::vector<Edge>& matching) {
  int n = g.order();
  TwoFactor tf;
  tf.mate_.assign(n, -1);
  for (auto [a, b] : matching) {
    if (!g.adjacent(a, b)) throw PreconditionError("matching edge " + edge_str({a, b}) + " is not an edge");
    if (tf.mate_[a] != -1 || tf.mate_[b] != -1)
      throw PreconditionError("matching edges overlap at " + edge_str({a, b}));
    tf.mate_[a] = b;
    tf.mate_[b] = a;
  }
  std::vector<std::array<Vertex, 2>> fn(n);
  for (Vertex v = 0; v < n; ++v) {
    if (tf.mate_[v] == -1) throw PreconditionError("vertex " + std::to_string(v) + " is unmatched");
    int k = 0;
    for (Vertex w : g.neighbours(v)) {
      if (w == tf.mate_[v]) continue;
      if (k == 2) throw PreconditionError("vertex " + std::to_string(v) + " has F-degree above 2");
      fn[v][k++] = w;
    }
    if (k != 2) throw PreconditionError("vertex " + std::to_string(v) + " has F-degree below 2");
  }
  std::vector<char> seen(n, 0);
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> cyc{s};
    seen[s] = 1;
    Vertex prev = s, cur = std::min(fn[s][0], fn[s][1]);
    while (cur != s) {
      cyc.push_back(cur);
      seen[cur] = 1;
      Vertex next = fn[cur][0] == prev ? fn[cur][1] : fn[cur][0];
      prev = cur;
      cur = next;
    }
    tf.cycles_.push_back(std::move(cyc));
  }
  tf.index();
  return tf;
}

TwoFactor TwoFactor::from_cycles(const Graph& g, const std::vector<std::vector<Vertex>>& cycles) {
  int n = g.order();
  TwoFactor tf;
  tf.cycles_ = cycles;
  tf.mate_.assign(n, -1);
  tf.index();
  std::set<Edge> f_edges;
  for (const auto& c : cycles) {
    if (c.size() < 3) throw PreconditionError("cycle shorter than 3");
    for (size_t i = 0; i < c.size(); ++i) {
      Vertex a = c[i], b = c[(i + 1) % c.size()];
      if (!g.adjacent(a, b)) throw PreconditionError("cycle step " + edge_str({a, b}) + " is not an edge");
      f_edges.insert(canonical(a, b));
    }
  }
  for (auto e : g.edges()) {
    if (f_edges.count(e)) continue;
    auto [a, b] = e;
    if (tf.mate_[a] != -1 || tf.mate_[b] != -1)
      throw PreconditionError("edges outside the cycles do not form a matching at " + edge_str(e));
    tf.mate_[a] = b;
    tf.mate_[b] = a;
  }
  for (Vertex v = 0; v < n; ++v)
    if (tf.mate_[v] == -1) throw PreconditionError("vertex " + std::to_string(v) + " has no mate");
  return tf;
}

Vertex TwoFactor::navigate(Vertex u, int k) const {
  const auto& c = cycles_[cycle_of(u)];
  return c[mod(pos_[u] + k, static_cast<int>(c.size()))];
}

int TwoFactor::distance(Vertex x, Vertex y) const {
  if (!same_cycle(x, y)) throw PreconditionError("distance between different cycles");
  return mod(pos_[y] - pos_[x], cycle_length(cycle_of(x)));
}

std::vector<Vertex> TwoFactor::subpath(Vertex x, Vertex y) const {
  int d = distance(x, y);
  std::vector<Vertex> out;
  for (int i = 0; i <= d; ++i) out.push_back(navigate(x, i));
  return out;
}

bool TwoFactor::is_f_edge(Vertex a, Vertex b) const {
  return a != b && same_cycle(a, b) && (navigate(a, 1) == b || navigate(a, -1) == b);
}

std::vector<Edge> TwoFactor::matching() const {
  std::vector<Edge> out;
  for (Vertex v = 0; v < order(); ++v)
    if (v < mate_[v]) out.emplace_back(v, mate_[v]);
  return out;
}

TwoFactor TwoFactor::reversed() const {
  TwoFactor r = *this;
  for (auto& c : r.cycles_) std::reverse(c.begin() + 1, c.end());
  r.index();
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// Calls visit(matching) for each perfect matching in lexicographic order until
// it returns false.
void for_each_matching(const Graph& g, const std::function<bool(const std::vector<Edge>&)>& visit) {
  int n = g.order();
  if (n % 2) return;
  std::vector<char> used(n, 0);
  std::vector<Edge> cur;
  bool stop = false;
  std::function<void(Vertex)> rec = [&](Vertex from) {
    while (from < n && used[from]) ++from;
    if (from == n) {
      if (!visit(cur)) stop = true;
      return;
    }
    used[from] = 1;
    for (Vertex w : g.neighbours(from)) {
      if (used[w]) continue;
      used[w] = 1;
      cur.emplace_back(from, w);
      rec(from + 1);
      cur.pop_back();
      used[w] = 0;
      if (stop) break;
    }
    used[from] = 0;
  };
  rec(0);
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

bool disconnects(const Graph& g, const std::vector<int>& removed) {
  Dsu d(g.order());
  int comps = g.order();
  const auto& es = g.edges();
  for (int i = 0; i < static_cast<int>(es.size()); ++i) {
    if (std::find(removed.begin(), removed.end(), i) != removed.end()) continue;
    if (d.unite(es[i].first, es[i].second)) --comps;
  }
  return comps > 1;
}

}  // namespace

std::vector<std::vector<Edge>> enumerate_perfect_matchings(const Graph& g, long limit) {
  std::vector<std::vector<Edge>> out;
  for_each_matching(g, [&](const std::vector<Edge>& m) {
    out.push_back(m);
    return limit <= 0 || static_cast<long>(out.size()) < limit;
  });
  return out;
}

std::vector<EdgeCut> minimal_small_cuts(const Graph& g) {
  if (!g.fits_mask()) throw GuardExceeded("minimal_small_cuts requires n <= 64");
  if (count_components(g) > 1) throw PreconditionError("minimal_small_cuts requires a connected graph");
  int m = g.size();
  std::vector<EdgeCut> out;
  auto consider = [&](const std::vector<int>& idx) {
    if (!disconnects(g, idx)) return;
    for (size_t drop = 0; drop < idx.size(); ++drop) {
      std::vector<int> sub;
      for (size_t i = 0; i < idx.size(); ++i)
        if (i != drop) sub.push_back(idx[i]);
      if (disconnects(g, sub)) return;
    }
    EdgeCut cut;
    for (int i : idx) cut.edges.push_back(g.edges()[i]);
    cut.minimal = true;
    std::vector<Edge> rest;
    for (int i = 0; i < m; ++i)
      if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(g.edges()[i]);
    auto comp = connected_components(Graph(g.order(), rest));
    for (Vertex v = 0; v < g.order(); ++v)
      if (comp[v] == comp[0]) cut.side.push_back(v);
    out.push_back(std::move(cut));
  };
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = b + 1; c < m; ++c) {
        consider({a, b, c});
        for (int d = c + 1; d < m; ++d) consider({a, b, c, d});
      }
  return out;
}

bool satisfies_ks_condition(const std::vector<EdgeCut>& cuts, const TwoFactor& tf) {
  for (const auto& cut : cuts) {
    bool hit = false;
    for (auto [a, b] : cut.edges)
      if (tf.mate(a) != b) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

bool satisfies_ks_condition(const Graph& g, const TwoFactor& tf) {
  return satisfies_ks_condition(minimal_small_cuts(g), tf);
}

TwoFactor select_two_factor(const Graph& g, const SelectOptions& opts) {
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) != 3) throw PreconditionError("two-factor selection needs a cubic graph; vertex " +
                                                  std::to_string(v) + " has degree " + std::to_string(g.degree(v)));
  if (g.order() == 0) throw PreconditionError("empty graph");
  auto cuts = minimal_small_cuts(g);
  std::optional<TwoFactor> best;
  for_each_matching(g, [&](const std::vector<Edge>& m) {
    if (opts.required_f_edge && std::find(m.begin(), m.end(), canonical(opts.required_f_edge->first,
                                                                        opts.required_f_edge->second)) != m.end())
      return true;
    TwoFactor tf = TwoFactor::from_matching(g, m);
    if (!satisfies_ks_condition(cuts, tf)) return true;
    if (!best || tf.num_cycles() > best->num_cycles()) best = std::move(tf);
    return !opts.first_qualifying;
  });
  if (!best) throw PreconditionError("no 2-factor meets every minimal 3- or 4-edge-cut (is the graph bridgeless?)");
  return *best;
}

SplitVerdict check_split_cycle(const Graph& g, const TwoFactor& tf, int c, const std::vector<Vertex>& d1,
                               const std::vector<Vertex>& d2) {
  auto check_cycle = [&](const std::vector<Vertex>& d) {
    if (d.size() < 3) throw PreconditionError("split part is not a cycle");
    for (size_t i = 0; i < d.size(); ++i)
      if (!g.adjacent(d[i], d[(i + 1) % d.size()])) throw PreconditionError("split part is not a cycle of the graph");
  };
  check_cycle(d1);
  check_cycle(d2);
  std::vector<Vertex> all(d1);
  all.insert(all.end(), d2.begin(), d2.end());
  std::sort(all.begin(), all.end());
  std::vector<Vertex> cv = tf.cycle(c);
  std::sort(cv.begin(), cv.end());
  if (all != cv) throw PreconditionError("split parts do not partition the cycle");
  SplitVerdict v;
  std::set<Vertex> in1(d1.begin(), d1.end());
  for (auto [a, b] : g.edges())
    if (in1.count(a) != in1.count(b) && std::binary_search(cv.begin(), cv.end(), a) &&
        std::binary_search(cv.begin(), cv.end(), b))
      ++v.crossing;
  v.clause_i = v.crossing >= 2 && v.crossing <= 4;
  v.clause_ii = !(d1.size() == 5 || d2.size() == 5) || v.crossing <= 3;
  return v;
}

TwoFactor lift_suppressed_factor(const ReductionNode& node, const TwoFactor& f0) {
  if (node.kind != ReductionKind::kDegree2Single || !node.suppression || node.children.size() != 1)
    throw PreconditionError("lift_suppressed_factor needs a degree2-single node");
  const auto& sup = *node.suppression;
  if (f0.order() != sup.suppressed.order()) throw PreconditionError("factor does not match the suppressed graph");
  if (f0.mate(sup.e0.first) == sup.e0.second) throw PreconditionError("the suppressed edge is not in F");
  int n = node.graph.order();
  std::vector<Edge> m1;
  for (auto [a, b] : f0.matching()) {
    Vertex pa = sup.to_parent[a], pb = sup.to_parent[b];
    m1.push_back(canonical(pa, pb));
    m1.push_back(canonical(pa + n, pb + n));
  }
  m1.emplace_back(sup.v0, sup.v0 + n);
  std::sort(m1.begin(), m1.end());
  return TwoFactor::from_matching(node.children[0].graph, m1);
}

TwoFactor suppressed_leaf_factor(const ReductionNode& node, const SelectOptions& opts) {
  if (!node.suppression) throw PreconditionError("node carries no suppression data");
  SelectOptions o = opts;
  o.required_f_edge = node.suppression->e0;
  return lift_suppressed_factor(node, select_two_factor(node.suppression->suppressed, o));
}

}  // namespace fracchrom
