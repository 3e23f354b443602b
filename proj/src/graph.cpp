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

#include "fracchrom/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace fracchrom {

// ---------------------------------------------------------------------------
// common.hpp helpers

std::vector<Vertex> members(VertexSet s) {
  std::vector<Vertex> out;
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

VertexSet mask_of(const std::vector<Vertex>& vs) {
  VertexSet s = 0;
  for (Vertex v : vs) s |= bit(v);
  return s;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw Error("not a rational: '" + text + "'");
  if (q.get_den() == 0) throw Error("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational target_k() { return make_rational(32, 11); }

Rational target_marginal() {
  Rational m = make_rational(88, 256);
  // 88/256 is exactly the reciprocal of 32/11.
  if (m * target_k() != 1) throw InvariantViolation("88/256 is not 1/(32/11)");
  return m;
}

// ---------------------------------------------------------------------------
// Graph

Edge canonical(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

Graph::Graph(int n) : adj_(n) {
  if (n < 0) throw PreconditionError("negative vertex count");
  if (n <= kMaxMaskVertices) nbr_mask_.assign(n, 0);
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw PreconditionError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
    if (a == b) throw PreconditionError("self-loop at " + std::to_string(a));
    edges_.push_back(canonical(a, b));
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end())
    throw PreconditionError("duplicate edge (" + std::to_string(dup->first) + "," + std::to_string(dup->second) + ")");
  for (auto [a, b] : edges_) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
    if (!nbr_mask_.empty()) {
      nbr_mask_[a] |= bit(b);
      nbr_mask_[b] |= bit(a);
    }
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= order() || v >= order()) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

int Graph::edge_index(Vertex u, Vertex v) const {
  Edge e = canonical(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return static_cast<int>(it - edges_.begin());
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& list : adj_) d = std::max(d, static_cast<int>(list.size()));
  return d;
}

VertexSet Graph::all_vertices() const {
  if (!fits_mask()) throw GuardExceeded("graph has more than 64 vertices");
  return order() == 64 ? ~VertexSet{0} : (bit(order()) - 1);
}

bool Graph::is_independent(VertexSet s) const {
  for (Vertex v : members(s))
    if (nbr_mask_.at(v) & s) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

// Exactly two integers on the line, nothing else.
std::optional<std::pair<long, long>> two_ints(const std::string& line) {
  std::istringstream in(line);
  long a, b;
  if (!(in >> a >> b)) return std::nullopt;
  std::string rest;
  if (in >> rest) return std::nullopt;
  return std::pair{a, b};
}

}  // namespace

Graph parse_edge_list(const std::string& text) {
  auto lines = split_lines(text);
  size_t i = 0;
  while (i < lines.size() && blank(lines[i])) ++i;
  if (i == lines.size()) throw ParseError(1, "empty edge list");
  auto header = two_ints(lines[i]);
  if (!header) throw ParseError(static_cast<int>(i + 1), "expected header 'n m'");
  auto [n, m] = *header;
  if (n < 0 || m < 0) throw ParseError(static_cast<int>(i + 1), "negative count in header");
  std::vector<Edge> edges;
  std::set<Edge> seen;
  for (++i; i < lines.size() && static_cast<long>(edges.size()) < m; ++i) {
    if (blank(lines[i])) continue;
    int lineno = static_cast<int>(i + 1);
    auto e = two_ints(lines[i]);
    if (!e) throw ParseError(lineno, "expected 'u v'");
    auto [u, v] = *e;
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(lineno, "vertex index out of range");
    if (u == v) throw ParseError(lineno, "self-loop");
    Edge c = canonical(static_cast<Vertex>(u), static_cast<Vertex>(v));
    if (!seen.insert(c).second) throw ParseError(lineno, "duplicate edge");
    edges.push_back(c);
  }
  if (static_cast<long>(edges.size()) != m)
    throw ParseError(static_cast<int>(lines.size()), "expected " + std::to_string(m) + " edges, found " +
                                                         std::to_string(edges.size()));
  for (; i < lines.size(); ++i)
    if (!blank(lines[i])) throw ParseError(static_cast<int>(i + 1), "trailing content after edge list");
  return Graph(static_cast<int>(n), edges);
}

std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.order() << ' ' << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph parse_graph6(const std::string& text) {
  std::string s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  const std::string header = ">>graph6<<";
  if (s.rfind(header, 0) == 0) s = s.substr(header.size());
  if (s.empty()) throw ParseError(1, "empty graph6 string");
  int c0 = static_cast<unsigned char>(s[0]);
  if (c0 < 63 || c0 > 126) throw ParseError(1, "bad graph6 header byte");
  if (c0 == 126) throw ParseError(1, "graph6 with n > 62 is not supported");
  int n = c0 - 63;
  size_t bits = static_cast<size_t>(n) * (n - 1) / 2;
  size_t nbytes = (bits + 5) / 6;
  if (s.size() - 1 < nbytes) throw ParseError(1, "truncated graph6 bit field");
  if (s.size() - 1 > nbytes) throw ParseError(1, "trailing bytes in graph6 string");
  std::vector<Edge> edges;
  size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      int byte = static_cast<unsigned char>(s[1 + k / 6]);
      if (byte < 63 || byte > 126) throw ParseError(1, "bad graph6 data byte");
      if (((byte - 63) >> (5 - k % 6)) & 1) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

std::string to_graph6(const Graph& g) {
  int n = g.order();
  if (n > 62) throw PreconditionError("graph6 encoding limited to n <= 62");
  std::string out(1, static_cast<char>(63 + n));
  int acc = 0, nb = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++nb == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = nb = 0;
      }
    }
  }
  if (nb > 0) out.push_back(static_cast<char>(63 + (acc << (6 - nb))));
  return out;
}

Graph parse_graph_auto(const std::string& text) {
  for (const auto& line : split_lines(text)) {
    if (blank(line)) continue;
    if (two_ints(line)) return parse_edge_list(text);
    return parse_graph6(line);
  }
  throw ParseError(1, "empty input");
}

// ---------------------------------------------------------------------------
// Structure

std::vector<int> connected_components(const Graph& g) {
  std::vector<int> comp(g.order(), -1);
  int next = 0;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (comp[s] != -1) continue;
    std::vector<Vertex> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbours(x))
        if (comp[y] == -1) {
          comp[y] = next;
          stack.push_back(y);
        }
    }
    ++next;
  }
  return comp;
}

int count_components(const Graph& g) {
  auto comp = connected_components(g);
  return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

namespace {

// Low-link DFS shared by bridge and block detection.
struct LowLink {
  const Graph& g;
  std::vector<int> disc, low;
  std::vector<Edge> bridges;
  std::vector<Edge> edge_stack;
  std::vector<std::vector<Vertex>> blocks;
  int tick = 0;

  explicit LowLink(const Graph& graph) : g(graph), disc(graph.order(), -1), low(graph.order(), 0) {}

  void pop_block(Edge until) {
    std::set<Vertex> block;
    while (!edge_stack.empty()) {
      Edge e = edge_stack.back();
      edge_stack.pop_back();
      block.insert(e.first);
      block.insert(e.second);
      if (e == until) break;
    }
    blocks.emplace_back(block.begin(), block.end());
  }

  void dfs(Vertex x, Vertex parent) {
    disc[x] = low[x] = tick++;
    for (Vertex y : g.neighbours(x)) {
      if (disc[y] == -1) {
        edge_stack.emplace_back(x, y);
        dfs(y, x);
        low[x] = std::min(low[x], low[y]);
        if (low[y] > disc[x]) bridges.push_back(canonical(x, y));
        if (low[y] >= disc[x]) pop_block({x, y});
      } else if (y != parent && disc[y] < disc[x]) {
        edge_stack.emplace_back(x, y);
        low[x] = std::min(low[x], disc[y]);
      }
    }
  }

  void run() {
    for (Vertex v = 0; v < g.order(); ++v) {
      if (disc[v] != -1) continue;
      dfs(v, -1);
      if (g.degree(v) == 0) blocks.push_back({v});
    }
    std::sort(bridges.begin(), bridges.end());
    std::sort(blocks.begin(), blocks.end());
  }
};

}  // namespace

std::vector<Edge> find_bridges(const Graph& g) {
  LowLink ll(g);
  ll.run();
  return ll.bridges;
}

std::vector<std::vector<Vertex>> find_blocks(const Graph& g) {
  LowLink ll(g);
  ll.run();
  return ll.blocks;
}

std::optional<std::array<Vertex, 3>> find_triangle(const Graph& g) {
  for (auto [a, b] : g.edges()) {
    auto na = g.neighbours(a);
    auto nb = g.neighbours(b);
    std::vector<Vertex> common;
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(common));
    if (!common.empty()) {
      std::array<Vertex, 3> t{a, b, common.front()};
      std::sort(t.begin(), t.end());
      return t;
    }
  }
  return std::nullopt;
}

StructureReport analyze(const Graph& g) {
  StructureReport r;
  r.is_cubic = true;
  r.is_subcubic = true;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.degree(v) != 3 && r.is_cubic) {
      r.is_cubic = false;
      if (!r.degree_witness) r.degree_witness = v;
    }
    if (g.degree(v) > 3 && r.is_subcubic) {
      r.is_subcubic = false;
      r.degree_witness = v;
    }
  }
  r.triangle_witness = find_triangle(g);
  r.is_triangle_free = !r.triangle_witness;
  auto comp = connected_components(g);
  r.is_connected = true;
  for (Vertex v = 0; v < g.order(); ++v)
    if (comp[v] != 0) {
      r.is_connected = false;
      r.disconnected_witness = v;
      break;
    }
  LowLink ll(g);
  ll.run();
  r.bridges = std::move(ll.bridges);
  r.blocks = std::move(ll.blocks);
  r.is_bridgeless = r.bridges.empty();
  return r;
}

std::vector<Edge> boundary(const Graph& g, std::span<const Vertex> side) {
  std::vector<char> in(g.order(), 0);
  for (Vertex v : side) in.at(v) = 1;
  std::vector<Edge> out;
  for (auto e : g.edges())
    if (in[e.first] != in[e.second]) out.push_back(e);
  return out;
}

std::vector<VertexSet> four_cycles(const Graph& g) {
  if (!g.fits_mask()) throw GuardExceeded("four_cycles requires n <= 64");
  std::set<VertexSet> found;
  for (Vertex a = 0; a < g.order(); ++a)
    for (Vertex c = a + 1; c < g.order(); ++c) {
      auto common = members(g.neighbourhood(a) & g.neighbourhood(c));
      for (size_t i = 0; i < common.size(); ++i)
        for (size_t j = i + 1; j < common.size(); ++j)
          found.insert(bit(a) | bit(c) | bit(common[i]) | bit(common[j]));
    }
  return {found.begin(), found.end()};
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep, std::vector<Vertex>* to_parent) {
  std::vector<int> index(g.order(), -1);
  for (size_t i = 0; i < keep.size(); ++i) index.at(keep[i]) = static_cast<int>(i);
  std::vector<Edge> edges;
  for (auto [a, b] : g.edges())
    if (index[a] >= 0 && index[b] >= 0) edges.emplace_back(index[a], index[b]);
  if (to_parent) to_parent->assign(keep.begin(), keep.end());
  return Graph(static_cast<int>(keep.size()), edges);
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  std::vector<Edge> edges;
  for (auto [a, b] : g.edges()) edges.emplace_back(perm[a], perm[b]);
  return Graph(g.order(), edges);
}

// ---------------------------------------------------------------------------
// Reductions

std::string to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::kNone: return "none";
    case ReductionKind::kTrivial: return "trivial";
    case ReductionKind::kComponents: return "components";
    case ReductionKind::kBridgeSplit: return "bridge-split";
    case ReductionKind::kDegree2Double: return "degree2-double";
    case ReductionKind::kDegree2Single: return "degree2-single";
  }
  return "?";
}

namespace {

ReductionNode reduce_connected(const Graph& g);

ReductionNode child_on(const Graph& g, const std::vector<Vertex>& keep) {
  std::vector<Vertex> to_parent;
  Graph sub = induced_subgraph(g, keep, &to_parent);
  ReductionNode node = reduce_connected(sub);
  node.to_parent = std::move(to_parent);
  node.copy.assign(node.to_parent.size(), 0);
  return node;
}

// Two disjoint copies of g plus the given joining edges (copy 0 vertex v is
// v, copy 1 vertex v is v + n).
ReductionNode doubled(const Graph& g, const std::vector<Vertex>& joins) {
  int n = g.order();
  std::vector<Edge> edges;
  for (auto [a, b] : g.edges()) {
    edges.emplace_back(a, b);
    edges.emplace_back(a + n, b + n);
  }
  for (Vertex d : joins) edges.emplace_back(d, d + n);
  ReductionNode child;
  child.graph = Graph(2 * n, edges);
  child.to_parent.resize(2 * n);
  child.copy.resize(2 * n);
  for (Vertex v = 0; v < n; ++v) {
    child.to_parent[v] = child.to_parent[v + n] = v;
    child.copy[v] = 0;
    child.copy[v + n] = 1;
  }
  return child;
}

ReductionNode reduce_connected(const Graph& g) {
  ReductionNode node;
  node.graph = g;
  int n = g.order();
  if (n <= 3) {
    node.kind = ReductionKind::kTrivial;
    return node;
  }
  if (count_components(g) > 1) {
    node.kind = ReductionKind::kComponents;
    auto comp = connected_components(g);
    int k = *std::max_element(comp.begin(), comp.end()) + 1;
    for (int c = 0; c < k; ++c) {
      std::vector<Vertex> keep;
      for (Vertex v = 0; v < n; ++v)
        if (comp[v] == c) keep.push_back(v);
      node.children.push_back(child_on(g, keep));
    }
    return node;
  }

  auto bridges = find_bridges(g);
  if (!bridges.empty()) {
    // 2-edge-connected components: components of g minus its bridges.
    std::vector<Edge> kept;
    std::set<Edge> bridge_set(bridges.begin(), bridges.end());
    for (auto e : g.edges())
      if (!bridge_set.count(e)) kept.push_back(e);
    auto tec = connected_components(Graph(n, kept));
    std::map<int, int> incident;
    for (auto [a, b] : bridges) {
      ++incident[tec[a]];
      ++incident[tec[b]];
    }
    for (auto [a, b] : bridges) {
      Vertex leaf_end = -1;
      if (incident[tec[a]] == 1) leaf_end = a;
      else if (incident[tec[b]] == 1) leaf_end = b;
      if (leaf_end < 0) continue;
      std::vector<Vertex> side1, side2;
      for (Vertex v = 0; v < n; ++v) (tec[v] == tec[leaf_end] ? side1 : side2).push_back(v);
      node.kind = ReductionKind::kBridgeSplit;
      node.bridge = Edge{leaf_end, leaf_end == a ? b : a};
      node.children.push_back(child_on(g, side1));
      node.children.push_back(child_on(g, side2));
      return node;
    }
    throw InvariantViolation("bridge tree without a leaf");
  }

  std::vector<Vertex> deg2;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) < 2) throw InvariantViolation("bridgeless graph with a vertex of degree < 2");
    if (g.degree(v) == 2) deg2.push_back(v);
  }
  if (deg2.empty()) {
    node.kind = ReductionKind::kNone;
    return node;
  }
  if (deg2.size() >= 2) {
    node.kind = ReductionKind::kDegree2Double;
    ReductionNode child = doubled(g, deg2);
    ReductionNode reduced = reduce_connected(child.graph);
    reduced.to_parent = std::move(child.to_parent);
    reduced.copy = std::move(child.copy);
    node.children.push_back(std::move(reduced));
    return node;
  }

  // Exactly one vertex of degree 2.
  node.kind = ReductionKind::kDegree2Single;
  Vertex v0 = deg2.front();
  SuppressionData sup;
  sup.v0 = v0;
  std::vector<int> index(n, -1);
  for (Vertex v = 0, k = 0; v < n; ++v)
    if (v != v0) {
      index[v] = k++;
      sup.to_parent.push_back(v);
    }
  std::vector<Edge> edges;
  for (auto [a, b] : g.edges())
    if (a != v0 && b != v0) edges.emplace_back(index[a], index[b]);
  Vertex a = g.neighbours(v0)[0], b = g.neighbours(v0)[1];
  sup.e0 = canonical(index[a], index[b]);
  edges.push_back(sup.e0);
  sup.suppressed = Graph(n - 1, edges);
  node.suppression = std::move(sup);
  ReductionNode child = doubled(g, {v0});
  child.kind = ReductionKind::kNone;
  node.children.push_back(std::move(child));
  return node;
}

void collect_leaves(const ReductionNode& node, std::vector<const ReductionNode*>& out) {
  if (node.children.empty()) {
    out.push_back(&node);
    return;
  }
  for (const auto& c : node.children) collect_leaves(c, out);
}

}  // namespace

ReductionNode reduce_subcubic(const Graph& g) {
  if (g.max_degree() > 3) throw PreconditionError("graph is not subcubic");
  if (auto t = find_triangle(g))
    throw PreconditionError("graph contains the triangle {" + std::to_string((*t)[0]) + "," +
                            std::to_string((*t)[1]) + "," + std::to_string((*t)[2]) + "}");
  return reduce_connected(g);
}

std::vector<const ReductionNode*> reduction_leaves(const ReductionNode& root) {
  std::vector<const ReductionNode*> out;
  collect_leaves(root, out);
  return out;
}

// ---------------------------------------------------------------------------

namespace named {

Graph complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return Graph(a + b, e);
}

Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

Graph path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph generalized_petersen(int n, int k) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) {
    e.emplace_back(i, (i + 1) % n);
    e.emplace_back(i, i + n);
    e.emplace_back(i + n, (i + k) % n + n);
  }
  return Graph(2 * n, e);
}

Graph petersen() { return generalized_petersen(5, 2); }

Graph circular_ladder(int n) { return generalized_petersen(n, 1); }

}  // namespace named

}  // namespace fracchrom
