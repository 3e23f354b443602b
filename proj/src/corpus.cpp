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

#include "fracchrom/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fracchrom/augment.hpp"
#include "fracchrom/fractional_lp.hpp"

namespace fracchrom {

namespace {

// Per-vertex invariant: distance profile plus short-cycle counts.
std::vector<std::uint64_t> vertex_invariants(const Graph& g) {
  int n = g.order();
  std::vector<std::uint64_t> inv(n);
  for (Vertex s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1);
    std::vector<Vertex> queue{s};
    dist[s] = 0;
    for (size_t i = 0; i < queue.size(); ++i)
      for (Vertex y : g.neighbours(queue[i]))
        if (dist[y] < 0) {
          dist[y] = dist[queue[i]] + 1;
          queue.push_back(y);
        }
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t x) { h = (h ^ x) * 1099511628211ULL; };
    std::vector<int> layers(n + 1, 0);
    for (int d : dist) layers[d < 0 ? n : d]++;
    for (int c : layers) mix(static_cast<std::uint64_t>(c));
    int tri = 0, quad = 0;
    auto nb = g.neighbours(s);
    for (size_t i = 0; i < nb.size(); ++i)
      for (size_t j = i + 1; j < nb.size(); ++j) {
        if (g.adjacent(nb[i], nb[j])) ++tri;
        for (Vertex w : g.neighbours(nb[i]))
          if (w != s && g.adjacent(w, nb[j])) ++quad;
      }
    mix(static_cast<std::uint64_t>(tri));
    mix(static_cast<std::uint64_t>(quad));
    inv[s] = h;
  }
  return inv;
}

Graph insert_edge(const Graph& g, Edge e1, Edge e2) {
  int n = g.order();
  Vertex x = n, y = n + 1;
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (e != e1 && e != e2) edges.push_back(e);
  edges.push_back({e1.first, x});
  edges.push_back({e1.second, x});
  edges.push_back({e2.first, y});
  edges.push_back({e2.second, y});
  edges.push_back({x, y});
  return Graph(n + 2, edges);
}

// Vertex v becomes a triangle {v, n, n+1}.
Graph expand_triangle(const Graph& g, Vertex v) {
  int n = g.order();
  auto nb = g.neighbours(v);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (e != canonical(v, nb[1]) && e != canonical(v, nb[2])) edges.push_back(e);
  edges.push_back({nb[1], n});
  edges.push_back({nb[2], n + 1});
  edges.push_back({v, n});
  edges.push_back({v, n + 1});
  edges.push_back({n, n + 1});
  return Graph(n + 2, edges);
}

// Edge (a, b) is replaced by a path through K4 minus an edge.
Graph insert_diamond(const Graph& g, Edge e) {
  int n = g.order();
  Vertex t1 = n, t2 = n + 1, m1 = n + 2, m2 = n + 3;
  std::vector<Edge> edges;
  for (const Edge& f : g.edges())
    if (f != e) edges.push_back(f);
  for (Edge f : std::initializer_list<Edge>{{e.first, t1}, {e.second, t2}, {t1, m1}, {t1, m2}, {t2, m1}, {t2, m2}, {m1, m2}})
    edges.push_back(f);
  return Graph(n + 4, edges);
}

// Deduplicating collector keyed by invariant_hash.
struct IsoPool {
  std::vector<Graph> graphs;
  std::multimap<std::uint64_t, size_t> buckets;
  void add(Graph h);
};

}  // namespace

std::uint64_t invariant_hash(const Graph& g) {
  auto inv = vertex_invariants(g);
  std::sort(inv.begin(), inv.end());
  std::uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<std::uint64_t>(g.order()) ^
                    (static_cast<std::uint64_t>(g.size()) << 32);
  for (auto x : inv) h = (h ^ x) * 0x100000001b3ULL;
  return h;
}

bool isomorphic(const Graph& a, const Graph& b) {
  int n = a.order();
  if (n != b.order() || a.size() != b.size()) return false;
  if (n == 0) return true;
  auto ia = vertex_invariants(a), ib = vertex_invariants(b);
  {
    auto sa = ia, sb = ib;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  // Order a's vertices so that each one (after the first of its component)
  // has an earlier neighbour.
  std::vector<Vertex> order;
  std::vector<Vertex> parent(n, -1);
  std::vector<char> seen(n, 0);
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    size_t start = order.size();
    order.push_back(s);
    for (size_t i = start; i < order.size(); ++i)
      for (Vertex y : a.neighbours(order[i]))
        if (!seen[y]) {
          seen[y] = 1;
          parent[y] = order[i];
          order.push_back(y);
        }
  }
  std::vector<Vertex> f(n, -1), used(n, 0);
  std::function<bool(int)> extend = [&](int k) {
    if (k == n) return true;
    Vertex x = order[k];
    std::vector<Vertex> cand;
    if (parent[x] >= 0) {
      auto nb = b.neighbours(f[parent[x]]);
      cand.assign(nb.begin(), nb.end());
    } else {
      for (Vertex y = 0; y < n; ++y) cand.push_back(y);
    }
    for (Vertex y : cand) {
      if (used[y] || ia[x] != ib[y] || a.degree(x) != b.degree(y)) continue;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) ok = a.adjacent(x, order[j]) == b.adjacent(y, f[order[j]]);
      if (!ok) continue;
      f[x] = y;
      used[y] = 1;
      if (extend(k + 1)) return true;
      used[y] = 0;
    }
    f[x] = -1;
    return false;
  };
  return extend(0);
}

void IsoPool::add(Graph h) {
  auto key = invariant_hash(h);
  auto [lo, hi] = buckets.equal_range(key);
  for (auto it = lo; it != hi; ++it)
    if (isomorphic(graphs[it->second], h)) return;
  buckets.emplace(key, graphs.size());
  graphs.push_back(std::move(h));
}

namespace {

Vertex root_of(const Graph& p) {
  for (Vertex v = 0; v < p.order(); ++v)
    if (p.degree(v) == 2) return v;
  throw InvariantViolation("piece without a root");
}

// Connected graphs on m vertices (m odd) with one vertex of degree 2 and the
// rest of degree 3. The root either suppresses to a cubic graph, or sits in
// a triangle (contract it) or at the tip of a diamond (cut it off).
const std::vector<Graph>& pieces(int m) {
  static std::map<int, std::vector<Graph>> memo;
  if (auto it = memo.find(m); it != memo.end()) return it->second;
  IsoPool pool;
  if (m >= 5) {
    for (const Graph& c : connected_cubic_graphs(m - 1))
      for (const Edge& e : c.edges()) {
        std::vector<Edge> edges;
        for (const Edge& f : c.edges())
          if (f != e) edges.push_back(f);
        edges.push_back({e.first, m - 1});
        edges.push_back({e.second, m - 1});
        pool.add(Graph(m, edges));
      }
    for (const Graph& p : pieces(m - 2)) {
      Vertex c = root_of(p), q = p.neighbours(c)[1];
      Vertex b = m - 2, r = m - 1;
      std::vector<Edge> edges;
      for (const Edge& f : p.edges())
        if (f != canonical(c, q)) edges.push_back(f);
      for (Edge f : std::initializer_list<Edge>{{q, b}, {c, b}, {c, r}, {b, r}}) edges.push_back(f);
      pool.add(Graph(m, edges));
    }
    if (m >= 9)
      for (const Graph& p : pieces(m - 4)) {
        Vertex c = root_of(p), tip = m - 4, a = m - 3, b = m - 2, r = m - 1;
        std::vector<Edge> edges = p.edges();
        for (Edge f : std::initializer_list<Edge>{{c, tip}, {tip, a}, {tip, b}, {a, b}, {a, r}, {b, r}})
          edges.push_back(f);
        pool.add(Graph(m, edges));
      }
  }
  return memo[m] = std::move(pool.graphs);
}

Graph join_pieces(const Graph& p, const Graph& q) {
  int off = p.order();
  std::vector<Edge> edges = p.edges();
  for (const Edge& e : q.edges()) edges.push_back({e.first + off, e.second + off});
  edges.push_back({root_of(p), root_of(q) + off});
  return Graph(off + q.order(), edges);
}

}  // namespace

std::vector<Graph> connected_cubic_graphs(int n) {
  if (n % 2 || n < 4 || n > 16) throw PreconditionError("cubic generation supports even n in [4, 16]");
  static std::map<int, std::vector<Graph>> memo;
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::vector<Graph> out;
  if (n == 4) {
    out.push_back(named::complete(4));
  } else {
    IsoPool pool;
    // Every connected cubic graph other than K4 either has a bridge (two
    // rooted pieces joined) or shrinks to a smaller one by deleting an edge,
    // contracting a triangle or contracting a diamond.
    for (const Graph& g : connected_cubic_graphs(n - 2)) {
      const auto& e = g.edges();
      for (size_t i = 0; i < e.size(); ++i)
        for (size_t j = i + 1; j < e.size(); ++j) pool.add(insert_edge(g, e[i], e[j]));
      for (Vertex v = 0; v < g.order(); ++v) pool.add(expand_triangle(g, v));
    }
    if (n >= 8)
      for (const Graph& g : connected_cubic_graphs(n - 4))
        for (const Edge& e : g.edges()) pool.add(insert_diamond(g, e));
    for (int m1 = 5; 2 * m1 <= n; m1 += 2)
      for (const Graph& p : pieces(m1))
        for (const Graph& q : pieces(n - m1)) pool.add(join_pieces(p, q));
    out = std::move(pool.graphs);
  }
  memo[n] = out;
  return out;
}

std::vector<Graph> cubic_graphs(int n, bool triangle_free, bool bridgeless) {
  std::vector<Graph> out;
  for (const Graph& g : connected_cubic_graphs(n)) {
    if (triangle_free && find_triangle(g)) continue;
    if (bridgeless && !find_bridges(g).empty()) continue;
    out.push_back(g);
  }
  return out;
}

std::vector<CorpusGraph> load_corpus_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw PreconditionError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<CorpusGraph> out;
  for (const auto& p : files) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    std::string name = p.filename().string();
    std::istringstream lines(text);
    std::string first;
    while (std::getline(lines, first) && first.find_first_not_of(" \t\r") == std::string::npos) {
    }
    std::istringstream probe(first);
    long a, b;
    if (probe >> a >> b) {
      try {
        out.push_back({name, parse_edge_list(text)});
      } catch (const ParseError& e) {
        throw PreconditionError(name + ": " + e.what());
      }
      continue;
    }
    std::istringstream all(text);
    std::string line;
    int lineno = 0;
    std::vector<CorpusGraph> here;
    while (std::getline(all, line)) {
      ++lineno;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (line.empty()) continue;
      try {
        here.push_back({name, parse_graph6(line)});
      } catch (const ParseError& e) {
        throw PreconditionError(name + ", line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    if (here.size() > 1)
      for (size_t i = 0; i < here.size(); ++i) here[i].name = name + "#" + std::to_string(i + 1);
    for (auto& h : here) out.push_back(std::move(h));
  }
  return out;
}

CorpusRow summarize(const CorpusGraph& entry, const EnumerationLimits& limits, const SamplerOptions& opts) {
  constexpr int kLpLimit = 24;
  CorpusRow row;
  row.name = entry.name;
  row.order = entry.graph.order();
  row.report = analyze(entry.graph);
  std::vector<std::string> notes;
  if (row.order <= kLpLimit) {
    row.chi_f = chi_f_exact(entry.graph, kLpLimit).value;
  } else {
    notes.push_back("chi_f skipped above " + std::to_string(kLpLimit) + " vertices");
  }
  const auto& r = row.report;
  if (r.is_cubic && r.is_triangle_free && r.is_bridgeless && r.is_connected) {
    try {
      auto res = exact_phase5_distribution(entry.graph, select_two_factor(entry.graph), limits, opts);
      row.min_marginal = *std::min_element(res.law.marginals.begin(), res.law.marginals.end());
      row.deficient = static_cast<int>(res.plan.order.size());
    } catch (const GuardExceeded& e) {
      notes.push_back(e.what());
    }
  } else {
    notes.push_back("not a connected bridgeless triangle-free cubic graph");
  }
  for (size_t i = 0; i < notes.size(); ++i) row.note += (i ? "; " : "") + notes[i];
  return row;
}

std::vector<DeficientHit> search_deficient(int max_n) {
  std::vector<DeficientHit> hits;
  for (int n = 6; n <= max_n; n += 2)
    for (const Graph& g : cubic_graphs(n, true, true)) {
      TwoFactor tf = select_two_factor(g);
      std::vector<Vertex> def;
      for (const auto& rec : deficiency_report(g, tf))
        if (rec.deficient()) def.push_back(rec.vertex);
      if (!def.empty()) hits.push_back({g, tf, def});
    }
  return hits;
}

}  // namespace fracchrom
