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

#ifndef FRACCHROM_TWO_FACTOR_HPP
#define FRACCHROM_TWO_FACTOR_HPP

#include <optional>
#include <vector>

#include "fracchrom/graph.hpp"

namespace fracchrom {

// A 2-factor F of a cubic graph with oriented cycles, together with the
// complementary perfect matching M.
class TwoFactor {
 public:
  TwoFactor() = default;

  // F = E(g) minus the given perfect matching; cycles get the canonical
  // orientation (start at the minimum vertex, step to its smaller F-neighbour).
  static TwoFactor from_matching(const Graph& g, const std::vector<Edge>& matching);
  // Pinned cycles, orientation kept as given. The remaining edges of g must
  // form a perfect matching.
  static TwoFactor from_cycles(const Graph& g, const std::vector<std::vector<Vertex>>& cycles);

  int order() const { return static_cast<int>(mate_.size()); }
  int num_cycles() const { return static_cast<int>(cycles_.size()); }
  const std::vector<std::vector<Vertex>>& cycles() const { return cycles_; }
  const std::vector<Vertex>& cycle(int i) const { return cycles_.at(i); }
  int cycle_length(int i) const { return static_cast<int>(cycles_.at(i).size()); }

  Vertex mate(Vertex u) const { return mate_.at(u); }
  int cycle_of(Vertex u) const { return cycle_of_.at(u); }
  int position(Vertex u) const { return pos_.at(u); }
  bool same_cycle(Vertex a, Vertex b) const { return cycle_of(a) == cycle_of(b); }
  // True when the matching edge at u joins two vertices of one cycle.
  bool is_chord(Vertex u) const { return same_cycle(u, mate(u)); }

  // Vertex reached from u by k steps along its cycle (k may be negative).
  Vertex navigate(Vertex u, int k) const;
  // Number of F-edges on the forward path from x to y (same cycle).
  int distance(Vertex x, Vertex y) const;
  // Vertices of the forward path from x to y, both ends included.
  std::vector<Vertex> subpath(Vertex x, Vertex y) const;
  bool is_f_edge(Vertex a, Vertex b) const;

  // Matching edges, canonical and sorted.
  std::vector<Edge> matching() const;
  // The same factor with every cycle traversed backwards.
  TwoFactor reversed() const;

  bool operator==(const TwoFactor& o) const { return cycles_ == o.cycles_ && mate_ == o.mate_; }

 private:
  void index();

  std::vector<std::vector<Vertex>> cycles_;
  std::vector<Vertex> mate_;
  std::vector<int> cycle_of_;
  std::vector<int> pos_;
};

// All perfect matchings as sorted edge lists, in lexicographic order.
// Stops after `limit` results when limit > 0.
std::vector<std::vector<Edge>> enumerate_perfect_matchings(const Graph& g, long limit = 0);

struct EdgeCut {
  std::vector<Edge> edges;
  std::vector<Vertex> side;  // component of g - edges holding the smallest vertex
  bool minimal = false;
};

// Every inclusionwise minimal edge-cut with 3 or 4 edges. Requires g connected.
std::vector<EdgeCut> minimal_small_cuts(const Graph& g);

// Does F meet every minimal 3- or 4-edge-cut?
bool satisfies_ks_condition(const Graph& g, const TwoFactor& tf);
bool satisfies_ks_condition(const std::vector<EdgeCut>& cuts, const TwoFactor& tf);

struct SelectOptions {
  // Return the first qualifying factor instead of maximising cycle count.
  bool first_qualifying = false;
  // Only factors with this edge in F are considered.
  std::optional<Edge> required_f_edge;
};

// Among 2-factors meeting every minimal small cut, one with the most cycles;
// ties go to the lexicographically smallest matching. Requires g cubic.
TwoFactor select_two_factor(const Graph& g, const SelectOptions& opts = {});

struct SplitVerdict {
  int crossing = 0;    // |E(D1, D2)|
  bool clause_i = false;   // 2 <= crossing <= 4
  bool clause_ii = false;  // a 5-cycle part implies crossing <= 3
  bool ok() const { return clause_i && clause_ii; }
};

// D1 and D2 must be vertex-disjoint cycles of g covering the vertices of
// cycle `c` of tf; throws PreconditionError otherwise.
SplitVerdict check_split_cycle(const Graph& g, const TwoFactor& tf, int c, const std::vector<Vertex>& d1,
                               const std::vector<Vertex>& d2);

// The 2-factor of the doubled graph at a kDegree2Single node, obtained from a
// 2-factor of the suppressed graph that contains e0. Copy 0 vertex v is v and
// copy 1 vertex v is v + n.
TwoFactor lift_suppressed_factor(const ReductionNode& node, const TwoFactor& f0);

// select_two_factor on the suppressed graph with e0 required in F, lifted.
TwoFactor suppressed_leaf_factor(const ReductionNode& node, const SelectOptions& opts = {});


}  // namespace fracchrom

#endif  // FRACCHROM_TWO_FACTOR_HPP
