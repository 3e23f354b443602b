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

// Shared fixtures and brute-force oracles for the test binaries.

#ifndef FRACCHROM_TESTS_FIXTURES_HPP
#define FRACCHROM_TESTS_FIXTURES_HPP

#include <functional>
#include <string>
#include <vector>

#include "fracchrom/augment.hpp"
#include "fracchrom/graph.hpp"
#include "fracchrom/two_factor.hpp"

namespace fracchrom::testing {

// A cubic graph with a pinned 2-factor in which `vertex` has a chord of the
// named deficient type.
struct ChordFixture {
  std::string name;
  DefType type;
  Rational epsilon;
  int n;
  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> cycles;
  Vertex vertex;

  Graph graph() const { return Graph(n, edges); }
  TwoFactor factor() const { return TwoFactor::from_cycles(graph(), cycles); }
};

inline std::vector<ChordFixture> chord_fixtures() {
  return {
      {"I", DefType::kI, Rational(-1, 2), 12,
       {{0, 7}, {0, 9}, {0, 10}, {1, 3}, {1, 4}, {1, 11}, {2, 3}, {2, 5}, {2, 11},
        {3, 6}, {4, 5}, {4, 7}, {5, 8}, {6, 7}, {6, 9}, {8, 9}, {8, 10}, {10, 11}},
       {{0, 9, 8, 10}, {1, 3, 6, 7, 4, 5, 2, 11}}, 4},
      {"Ia", DefType::kIa, Rational(-2), 10,
       {{0, 5}, {0, 6}, {0, 8}, {1, 3}, {1, 4}, {1, 9}, {2, 3}, {2, 5},
        {2, 9}, {3, 6}, {4, 5}, {4, 7}, {6, 7}, {7, 8}, {8, 9}},
       {{0, 6, 3, 1, 9, 2, 5, 4, 7, 8}}, 5},
      {"Ib", DefType::kIb, Rational(-3, 2), 14,
       {{0, 8}, {0, 9}, {0, 10}, {1, 3}, {1, 4}, {1, 12}, {2, 3}, {2, 5}, {2, 12}, {3, 6}, {4, 5},
        {4, 7}, {5, 13}, {6, 7}, {6, 9}, {7, 10}, {8, 11}, {8, 13}, {9, 11}, {10, 11}, {12, 13}},
       {{0, 9, 6, 7, 4, 5, 2, 3, 1, 12, 13, 8, 11, 10}}, 4},
      {"II", DefType::kII, Rational(-1, 8), 12,
       {{0, 7}, {0, 8}, {0, 10}, {1, 3}, {1, 4}, {1, 11}, {2, 3}, {2, 5}, {2, 11},
        {3, 6}, {4, 5}, {4, 7}, {5, 8}, {6, 7}, {6, 9}, {8, 9}, {9, 10}, {10, 11}},
       {{0, 7, 4, 1, 3, 6, 9, 10, 11, 2, 5, 8}}, 7},
      {"IIa", DefType::kIIa, Rational(-1, 2), 16,
       {{0, 3}, {0, 10}, {0, 12}, {1, 3}, {1, 9}, {1, 11}, {2, 3}, {2, 8}, {2, 13}, {4, 7}, {4, 10}, {4, 14},
        {5, 6}, {5, 11}, {5, 15}, {6, 7}, {6, 14}, {7, 15}, {8, 9}, {8, 12}, {9, 13}, {10, 11}, {12, 13}, {14, 15}},
       {{0, 12, 8, 9, 13, 2, 3, 1, 11, 10}, {4, 14, 6, 5, 15, 7}}, 3},
      {"III", DefType::kIII, Rational(-1, 8), 12,
       {{0, 7}, {0, 8}, {0, 10}, {1, 3}, {1, 4}, {1, 11}, {2, 3}, {2, 5}, {2, 11},
        {3, 6}, {4, 5}, {4, 7}, {5, 8}, {6, 7}, {6, 9}, {8, 9}, {9, 10}, {10, 11}},
       {{0, 7, 6, 3, 1, 4, 5, 2, 11, 10, 9, 8}}, 7},
  };
}

inline Graph petersen_graph() { return named::petersen(); }

// Two K4-minus-an-edge gadgets, each with its degree-2 vertices joined
// through a new vertex, and the new vertices joined by a bridge. Has
// triangles.
inline Graph bridged_diamonds() {
  std::vector<Edge> e;
  for (int off : {0, 5}) {
    Vertex a = off, b = off + 1, c = off + 2, d = off + 3, s = off + 4;
    for (Edge x : std::initializer_list<Edge>{{a, c}, {a, d}, {b, c}, {b, d}, {c, d}, {a, s}, {b, s}})
      e.push_back(canonical(x.first, x.second));
  }
  e.push_back({4, 9});
  return Graph(10, e);
}

// Two copies of K_{3,3} with one edge subdivided, the subdivision vertices
// joined by a bridge: cubic, triangle-free, one bridge.
inline Graph bridged_k33() {
  std::vector<Edge> e;
  for (int off : {0, 7}) {
    for (Vertex a = 0; a < 3; ++a)
      for (Vertex b = 3; b < 6; ++b)
        if (a != 0 || b != 3) e.push_back({off + a, off + b});
    e.push_back({off + 0, off + 6});
    e.push_back({off + 3, off + 6});
  }
  e.push_back({6, 13});
  return Graph(14, e);
}

// Two 5-cycles joined by an edge: subcubic with degree-2 vertices.
inline Graph bridged_pentagons() {
  std::vector<Edge> e;
  for (int off : {0, 5})
    for (Vertex i = 0; i < 5; ++i) e.push_back(canonical(off + i, off + (i + 1) % 5));
  e.push_back({0, 5});
  return Graph(10, e);
}

// Every independent set, by subset enumeration.
inline std::vector<VertexSet> brute_independent_sets(const Graph& g) {
  std::vector<VertexSet> out;
  int n = g.order();
  for (VertexSet s = 0; s < (VertexSet{1} << n); ++s) {
    bool ok = true;
    for (auto [a, b] : g.edges())
      if (contains(s, a) && contains(s, b)) ok = false;
    if (ok) out.push_back(s);
  }
  return out;
}

inline std::vector<VertexSet> brute_maximal_independent_sets(const Graph& g) {
  std::vector<VertexSet> out;
  for (VertexSet s : brute_independent_sets(g)) {
    bool maximal = true;
    for (Vertex v = 0; v < g.order() && maximal; ++v)
      if (!contains(s, v) && g.is_independent(s | bit(v))) maximal = false;
    if (maximal) out.push_back(s);
  }
  return out;
}

// Number of perfect matchings by expanding along the lowest free vertex.
inline long count_perfect_matchings(const Graph& g) {
  std::function<long(VertexSet)> rec = [&](VertexSet free) -> long {
    if (!free) return 1;
    Vertex v = std::countr_zero(free);
    long total = 0;
    for (Vertex w : g.neighbours(v))
      if (contains(free, w)) total += rec(free & ~bit(v) & ~bit(w));
    return total;
  };
  return rec(g.all_vertices());
}

}  // namespace fracchrom::testing

#endif  // FRACCHROM_TESTS_FIXTURES_HPP
