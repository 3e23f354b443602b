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

#ifndef FRACCHROM_GRAPH_HPP
#define FRACCHROM_GRAPH_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracchrom/common.hpp"

namespace fracchrom {

// Immutable simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  // Throws PreconditionError on self-loops, duplicate edges or bad indices.
  Graph(int n, std::span<const Edge> edges);

  int order() const { return static_cast<int>(adj_.size()); }
  int size() const { return static_cast<int>(edges_.size()); }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  std::span<const Vertex> neighbours(Vertex v) const { return adj_[v]; }
  // Canonical (u < v) edges in lexicographic order.
  const std::vector<Edge>& edges() const { return edges_; }
  bool adjacent(Vertex u, Vertex v) const;
  // Index into edges(), or -1.
  int edge_index(Vertex u, Vertex v) const;
  int max_degree() const;

  // Bitmask views; require order() <= 64.
  VertexSet neighbourhood(Vertex v) const { return nbr_mask_.at(v); }
  VertexSet closed_neighbourhood(Vertex v) const { return nbr_mask_.at(v) | bit(v); }
  VertexSet all_vertices() const;
  bool is_independent(VertexSet s) const;
  bool fits_mask() const { return order() <= kMaxMaskVertices; }

  bool operator==(const Graph& other) const { return edges_ == other.edges_ && order() == other.order(); }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<Edge> edges_;
  std::vector<VertexSet> nbr_mask_;
};

Edge canonical(Vertex u, Vertex v);

// Throws ParseError (with line number) on malformed input.
Graph parse_edge_list(const std::string& text);
std::string format_edge_list(const Graph& g);

// Standard nauty graph6, n <= 62. An optional ">>graph6<<" header is accepted.
Graph parse_graph6(const std::string& text);
std::string to_graph6(const Graph& g);

// Either format; edge lists are recognised by a leading "n m" line.
Graph parse_graph_auto(const std::string& text);

struct StructureReport {
  bool is_cubic = false;
  bool is_subcubic = false;
  bool is_triangle_free = false;
  bool is_connected = false;
  bool is_bridgeless = false;
  std::optional<std::array<Vertex, 3>> triangle_witness;
  // A vertex violating cubicity / subcubicity, and one not reachable from 0.
  std::optional<Vertex> degree_witness;
  std::optional<Vertex> disconnected_witness;
  std::vector<Edge> bridges;
  std::vector<std::vector<Vertex>> blocks;
};

StructureReport analyze(const Graph& g);

std::vector<Edge> find_bridges(const Graph& g);
// Biconnected components as sorted vertex lists; isolated vertices form
// singleton blocks and bridges form two-vertex blocks.
std::vector<std::vector<Vertex>> find_blocks(const Graph& g);
std::optional<std::array<Vertex, 3>> find_triangle(const Graph& g);
// Component index per vertex, numbered in order of smallest member.
std::vector<int> connected_components(const Graph& g);
int count_components(const Graph& g);

// Edges with exactly one endpoint in `side`.
std::vector<Edge> boundary(const Graph& g, std::span<const Vertex> side);

// All 4-cycles as vertex masks (each listed once). Requires order() <= 64.
std::vector<VertexSet> four_cycles(const Graph& g);

Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep, std::vector<Vertex>* to_parent = nullptr);
Graph relabel(const Graph& g, std::span<const Vertex> perm);

// ---------------------------------------------------------------------------
// Subcubic to cubic reductions.

enum class ReductionKind {
  kNone,           // cubic bridgeless leaf
  kTrivial,        // at most three vertices
  kComponents,     // disconnected input, one child per component
  kBridgeSplit,    // leaf block and the rest, separated by one bridge
  kDegree2Double,  // two copies joined at every degree-2 vertex
  kDegree2Single,  // two copies joined at the unique degree-2 vertex
};

std::string to_string(ReductionKind kind);

// Data needed to lift a 2-factor of the suppressed graph to the doubled one.
struct SuppressionData {
  Vertex v0 = -1;                 // the degree-2 vertex in the parent
  Graph suppressed;               // parent with v0 suppressed (cubic)
  std::vector<Vertex> to_parent;  // suppressed vertex -> parent vertex
  Edge e0;                        // the edge replacing the path through v0
};

struct ReductionNode {
  ReductionKind kind = ReductionKind::kNone;
  Graph graph;
  // Total map from this node's vertices to its parent's, and which copy of
  // the parent each vertex belongs to. Empty at the root.
  std::vector<Vertex> to_parent;
  std::vector<int> copy;
  std::vector<ReductionNode> children;
  std::optional<Edge> bridge;                  // kBridgeSplit, in this graph
  std::optional<SuppressionData> suppression;  // kDegree2Single
};

// Precondition: subcubic and triangle-free (PreconditionError otherwise).
ReductionNode reduce_subcubic(const Graph& g);

// Every leaf (kNone or kTrivial) of the tree, in depth-first order.
std::vector<const ReductionNode*> reduction_leaves(const ReductionNode& root);

// ---------------------------------------------------------------------------
// Small named graphs used by tests, the CLI and the corpus.
namespace named {
Graph complete(int n);
Graph complete_bipartite(int a, int b);
Graph cycle(int n);
Graph path(int n);
Graph petersen();
Graph generalized_petersen(int n, int k);
Graph circular_ladder(int n);
}  // namespace named

}  // namespace fracchrom

#endif  // FRACCHROM_GRAPH_HPP
