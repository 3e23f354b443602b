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
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "fracchrom/augment.hpp"
#include "fracchrom/corpus.hpp"

using namespace fracchrom;

TEST_CASE("chord fixtures classify to their types") {
  for (const auto& fx : testing::chord_fixtures()) {
    CAPTURE(fx.name);
    Graph g = fx.graph();
    TwoFactor tf = fx.factor();
    REQUIRE(tf.is_chord(fx.vertex));
    auto cls = classify_chord(g, tf, fx.vertex);
    CHECK(cls.type == fx.type);
    CHECK(cls.matches.size() == 1);
    auto rep = deficiency_report(g, tf);
    CHECK(rep[fx.vertex].type == fx.type);
    CHECK(rep[fx.vertex].epsilon == fx.epsilon);
    CHECK(type_epsilon(fx.type) == fx.epsilon);
    // The mate of a chord-type deficient vertex is not deficient and gets
    // the opposite value.
    Vertex v = tf.mate(fx.vertex);
    CHECK_FALSE(rep[v].deficient());
    CHECK(rep[v].epsilon == -fx.epsilon);
    CHECK(rep[fx.vertex].sponsor == v);
    // Reversing the orientation turns the type into its mirror.
    if (fx.type != DefType::kI) CHECK(to_string(classify_chord(g, tf.reversed(), fx.vertex).type) == fx.name + "*");
  }
}

TEST_CASE("non-chord epsilon") {
  Graph pet = testing::petersen_graph();
  TwoFactor tf = select_two_factor(pet);
  for (Vertex u = 0; u < 10; ++u) {
    CHECK(epsilon_nochord(pet, tf, u) == 0);
    CHECK_THROWS_AS(classify_chord(pet, tf, u), PreconditionError);
  }
  // Rungs of the 5-prism lie in 4-cycles.
  Graph cl = named::circular_ladder(5);
  TwoFactor lt = TwoFactor::from_cycles(cl, {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
  for (Vertex u = 0; u < 10; ++u) CHECK(epsilon_nochord(cl, lt, u) == 1);
  CHECK(edge_in_four_cycle(cl, 0, 5));
  CHECK(path_in_four_cycle(cl, 1, 0, 5));
  CHECK_FALSE(path_in_four_cycle(pet, 1, 0, 4));
}

TEST_CASE("type-0 vertices have a sponsor with epsilon 1") {
  for (const auto& hit : search_deficient(12)) {
    auto rep = deficiency_report(hit.graph, hit.factor);
    std::set<Vertex> sponsors;
    for (const auto& r : rep) {
      if (!r.deficient()) continue;
      REQUIRE(r.sponsor);
      CHECK(sponsors.insert(*r.sponsor).second);
      if (r.type == DefType::kType0) {
        CHECK(r.epsilon == -1);
        CHECK(rep[*r.sponsor].epsilon == 1);
        CHECK(hit.factor.is_f_edge(r.vertex, *r.sponsor));
      } else {
        CHECK(*r.sponsor == hit.factor.mate(r.vertex));
      }
    }
  }
}

TEST_CASE("favourable sets and receptivity") {
  Graph pet = testing::petersen_graph();
  // N[0] = {0, 1, 4, 5}.
  CHECK(favourable(pet, 0, 1, bit(1)));
  CHECK(favourable(pet, 0, 1, bit(1) | bit(7)));
  CHECK_FALSE(favourable(pet, 0, 1, bit(1) | bit(4)));
  CHECK_FALSE(favourable(pet, 0, 1, bit(0)));
  Distribution d{{bit(1), Rational(1, 4)}, {bit(1) | bit(4), Rational(1, 4)}, {bit(2), Rational(1, 2)}};
  CHECK(receptivity(pet, 0, 1, d) == Rational(1, 4));
}

TEST_CASE("phase-5 plan on corpus graphs") {
  auto hits = search_deficient(12);
  REQUIRE_FALSE(hits.empty());
  for (const auto& hit : hits) {
    auto res = exact_phase5_distribution(hit.graph, hit.factor);
    const auto& plan = res.plan;
    CHECK(check_plan(hit.graph, plan).empty());
    for (size_t i = 0; i < plan.order.size(); ++i) {
      CHECK(res.law.added[i] == plan.deficit[i]);
      CHECK(plan.receptivities[i] >= plan.eta[i]);
      if (i > 0)
        CHECK(abs(res.report[plan.order[i - 1]].epsilon) <= abs(res.report[plan.order[i]].epsilon));
    }
    for (Vertex v = 0; v < hit.graph.order(); ++v) CHECK(res.law.marginals[v] >= target_marginal());
    for (const auto& [s, p] : res.law.dist) CHECK(hit.graph.is_independent(s));
  }
}

TEST_CASE("plan order must be monotone") {
  auto fx = testing::chord_fixtures()[2];  // Ib plus two type-I vertices
  Graph g = fx.graph();
  TwoFactor tf = fx.factor();
  auto law = enumerate_distribution(g, tf);
  auto plan = build_phase5_plan(g, tf, law.dist);
  REQUIRE(plan.order.size() == 3);
  CHECK(plan.order.back() == fx.vertex);
  std::vector<Vertex> bad{fx.vertex, plan.order[0], plan.order[1]};
  CHECK_THROWS_AS(build_phase5_plan(g, tf, law.dist, {bad}), PreconditionError);
  std::vector<Vertex> swapped{plan.order[1], plan.order[0], plan.order[2]};
  auto alt = build_phase5_plan(g, tf, law.dist, {swapped});
  CHECK(check_plan(g, alt).empty());
  auto pushed = push_through_phase5(law.dist, alt, g.order());
  for (size_t i = 0; i < alt.order.size(); ++i) CHECK(pushed.added[i] == alt.deficit[i]);
}

TEST_CASE("sampled phase 5 matches the exact law") {
  auto fx = testing::chord_fixtures()[1];  // Ia
  Graph g = fx.graph();
  TwoFactor tf = fx.factor();
  auto res = exact_phase5_distribution(g, tf);
  auto post = [&](VertexSet j, std::mt19937_64& rng) { return run_phase5(j, res.plan, rng); };
  auto mc = monte_carlo(g, tf, 200000, 77, {}, post);
  CHECK(mc.violations == 0);
  for (Vertex v = 0; v < g.order(); ++v)
    CHECK(std::abs(mc.frequency(v) - to_double(res.law.marginals[v])) <= 5 * mc.std_error(v) + 1e-9);
}
