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

#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "fracchrom/corpus.hpp"
#include "fracchrom/fractional_lp.hpp"
#include "fracchrom/json_io.hpp"

using namespace fracchrom;

namespace {

// Optimality witness checked against every independent set.
void check_lp_optimal(const Graph& g, const LpResult& lp) {
  Rational ysum(0);
  for (const auto& y : lp.dual) {
    CHECK(y >= 0);
    ysum += y;
  }
  CHECK(ysum == lp.value);
  for (VertexSet s : testing::brute_independent_sets(g)) {
    Rational load(0);
    for (Vertex v : members(s)) load += lp.dual[v];
    CHECK(load <= 1);
  }
  CHECK(lp.primal.size() == lp.value);
  CHECK(lp.primal.covers(g.order()));
  for (const auto& [s, w] : lp.primal.weights) {
    CHECK(g.is_independent(s));
    CHECK(w > 0);
  }
}

}  // namespace

TEST_CASE("maximal independent sets match subset enumeration") {
  std::vector<Graph> gs{testing::petersen_graph(), named::complete_bipartite(3, 3), named::cycle(7), named::path(5),
                        named::generalized_petersen(7, 2), named::complete(4), Graph(3)};
  for (const Graph& g : connected_cubic_graphs(10)) gs.push_back(g);
  for (const Graph& g : gs) CHECK(maximal_independent_sets(g) == testing::brute_maximal_independent_sets(g));
  CHECK(maximal_independent_sets(Graph(0)) == std::vector<VertexSet>{0});
  CHECK_THROWS_AS(maximal_independent_sets(named::cycle(50)), GuardExceeded);
}

TEST_CASE("exact fractional chromatic numbers") {
  struct Case {
    Graph g;
    Rational value;
  };
  std::vector<Case> cases{{named::generalized_petersen(7, 2), Rational(14, 5)},
                          {named::cycle(7), Rational(7, 3)},
                          {named::cycle(5), Rational(5, 2)},
                          {testing::petersen_graph(), Rational(5, 2)},
                          {named::complete_bipartite(3, 3), Rational(2)},
                          {named::complete(2), Rational(2)},
                          {named::complete(4), Rational(4)},
                          {named::cycle(9), Rational(9, 4)},
                          {Graph(3), Rational(1)}};
  for (const auto& c : cases) {
    auto lp = chi_f_exact(c.g);
    CHECK(lp.value == c.value);
    check_lp_optimal(c.g, lp);
  }
  for (const Graph& g : cubic_graphs(12, true, false)) check_lp_optimal(g, chi_f_exact(g));
}

TEST_CASE("multiset certificates from weightings") {
  FractionalColouring w;
  for (Vertex i = 0; i < 7; ++i) w.weights[bit(i) | bit((i + 2) % 7) | bit((i + 4) % 7)] = Rational(1, 3);
  auto cert = weighting_to_multiset(w, 7);
  CHECK(cert.n_copies == 3);
  CHECK(cert.total() == 7);
  CHECK(cert.k == Rational(7, 3));
  CHECK(verify_certificate(named::cycle(7), cert).ok);

  // Over-covered vertices are trimmed until every weight is exactly 1.
  FractionalColouring heavy;
  heavy.weights[bit(0) | bit(2)] = 1;
  heavy.weights[bit(0) | bit(3)] = 1;
  heavy.weights[bit(1) | bit(3)] = 1;
  Graph c4 = named::cycle(4);
  auto trimmed = weighting_to_multiset(heavy, 4);
  CHECK(verify_certificate(c4, trimmed).ok);
  CHECK(trimmed.k == 3);

  Distribution low{{bit(0), Rational(1, 2)}, {bit(1), Rational(1, 2)}};
  CHECK_THROWS_AS(distribution_to_weighting(low, Rational(3, 2), 2), PreconditionError);
  auto ok = distribution_to_weighting(low, Rational(2), 2);
  CHECK(ok.size() == 2);
  CHECK(multiset_to_distribution(weighting_to_multiset(ok, 2)) == low);
}

TEST_CASE("certificate verifier rejects bad certificates") {
  Graph c5 = named::cycle(5);
  MultisetCertificate good;
  good.k = Rational(5, 2);
  good.n_copies = 2;
  for (Vertex i = 0; i < 5; ++i) good.sets.push_back({bit(i) | bit((i + 2) % 5), 1});
  CHECK(verify_certificate(c5, good).ok);

  auto edge = good;
  edge.sets[0].first = bit(0) | bit(1);
  CHECK_FALSE(verify_certificate(c5, edge).ok);
  auto cover = good;
  cover.sets[0].second = 2;
  CHECK_FALSE(verify_certificate(c5, cover).ok);
  auto size = good;
  size.k = 3;
  CHECK_FALSE(verify_certificate(c5, size).ok);
}

TEST_CASE("32/11 certificates along reduction trees") {
  Graph two_c5(10, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {5, 9}});
  Graph k33_sub(7, std::vector<Edge>{{0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {0, 6}, {3, 6}});
  std::vector<Graph> gs{testing::petersen_graph(),     named::complete_bipartite(3, 3), named::generalized_petersen(7, 2),
                        named::cycle(5),               named::cycle(8),                 named::path(6),
                        testing::bridged_k33(),        testing::bridged_pentagons(),    two_c5,
                        k33_sub,                       named::complete(2),              Graph(1)};
  for (const Graph& g : gs) {
    CAPTURE(to_graph6(g));
    auto sc = chi_f_upper_subcubic(g);
    CHECK(sc.cert.k == target_k());
    CHECK(verify_certificate(g, sc.cert).ok);
    CHECK(Rational(sc.cert.total()) == target_k() * Rational(sc.cert.n_copies));
    CHECK_FALSE(sc.steps.empty());
    auto back = certificate_from_json(to_json(sc.cert));
    CHECK(back.k == sc.cert.k);
    CHECK(back.n_copies == sc.cert.n_copies);
    CHECK(back.sets == sc.cert.sets);
  }
  CHECK_THROWS_AS(chi_f_upper_subcubic(named::complete(4)), PreconditionError);
}
