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

#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "fracchrom/sampler.hpp"
#include "fracchrom/two_factor.hpp"

using namespace fracchrom;

namespace {

// Straightforward re-derivation of the Phase 1-4 law, used as an oracle.
struct ReferenceSampler {
  const Graph& g;
  const TwoFactor& tf;

  // Arcs of consecutive members of x on each cycle; flag marks whole cycles.
  std::vector<std::pair<std::vector<Vertex>, bool>> runs(VertexSet x) const {
    std::vector<std::pair<std::vector<Vertex>, bool>> out;
    for (const auto& c : tf.cycles()) {
      int len = static_cast<int>(c.size());
      int gap = -1;
      for (int i = 0; i < len; ++i)
        if (!contains(x, c[i])) gap = i;
      if (gap < 0) {
        out.push_back({c, true});
        continue;
      }
      std::vector<Vertex> cur;
      for (int k = 1; k <= len; ++k) {
        Vertex v = c[(gap + k) % len];
        if (contains(x, v)) {
          cur.push_back(v);
        } else if (!cur.empty()) {
          out.push_back({cur, false});
          cur.clear();
        }
      }
    }
    return out;
  }

  // Law of the union of the maximum independent sets chosen on each run.
  std::map<VertexSet, Rational> phi(VertexSet x) const {
    std::map<VertexSet, Rational> acc{{0, Rational(1)}};
    for (const auto& [walk, cyclic] : runs(x)) {
      std::map<VertexSet, Rational> opts;
      int len = static_cast<int>(walk.size());
      if (cyclic && len % 2) {
        for (int skip = 0; skip < len; ++skip) {
          // Every other vertex after `skip`, stopping short of it.
          VertexSet s = 0;
          for (int j = 1; j < len - 1; j += 2) s |= bit(walk[(skip + j) % len]);
          opts[s] += Rational(1, len);
        }
      } else {
        VertexSet even = 0, all = 0;
        for (int i = 0; i < len; ++i) {
          all |= bit(walk[i]);
          if (i % 2 == 0) even |= bit(walk[i]);
        }
        opts[even] += Rational(1, 2);
        opts[all & ~even] += Rational(1, 2);
      }
      std::map<VertexSet, Rational> next;
      for (const auto& [a, p] : acc)
        for (const auto& [o, q] : opts) next[a | o] += p * q;
      acc = std::move(next);
    }
    return acc;
  }

  VertexSet closed_nbhd(VertexSet s) const {
    VertexSet out = s;
    for (Vertex v : members(s)) out |= g.neighbourhood(v);
    return out;
  }

  Distribution law() const {
    auto m = tf.matching();
    int k = static_cast<int>(m.size());
    Distribution out;
    Rational unit(1, 1);
    unit /= Rational(BigInt(1) << k);
    for (std::int64_t o = 0; o < (std::int64_t{1} << k); ++o) {
      VertexSet heads = 0;
      for (int i = 0; i < k; ++i) heads |= bit((o >> i) & 1 ? m[i].second : m[i].first);
      for (const auto& [s1, p1] : phi(heads)) {
        VertexSet cur = s1;
        for (Vertex v : members(heads))
          if (!(g.neighbourhood(v) & heads)) cur |= bit(v);
        VertexSet feasible = g.all_vertices() & ~closed_nbhd(cur);
        for (const auto& [s3, p3] : phi(feasible)) {
          VertexSet out3 = cur | s3;
          for (Vertex v : members(feasible))
            if (!(g.neighbourhood(v) & feasible)) out3 |= bit(v);
          out[out3] += unit * p1 * p3;
        }
      }
    }
    return out;
  }
};

}  // namespace

TEST_CASE("runs and the selector") {
  Graph pet = testing::petersen_graph();
  TwoFactor tf = select_two_factor(pet);
  VertexSet all = pet.all_vertices();
  CHECK(runs_of(all, tf).size() == 2);
  CHECK(runs_of(0, tf).empty());

  auto outs = phi_outcomes(mask_of(tf.cycle(0)), tf);
  CHECK(outs.size() == 5);
  std::vector<int> hits(10, 0);
  for (const auto& o : outs) {
    CHECK(o.prob == Rational(1, 5));
    CHECK(popcount(o.chosen) == 2);
    CHECK(pet.is_independent(o.chosen));
    for (Vertex v : members(o.chosen)) ++hits[v];
  }
  for (Vertex v : tf.cycle(0)) CHECK(hits[v] == 2);

  // A three-vertex path run: ends together, or the middle alone.
  const auto& c = tf.cycle(1);
  VertexSet path = bit(c[0]) | bit(c[1]) | bit(c[2]);
  auto po = phi_outcomes(path, tf);
  REQUIRE(po.size() == 2);
  std::set<VertexSet> got{po[0].chosen, po[1].chosen};
  CHECK(got == std::set<VertexSet>{bit(c[0]) | bit(c[2]), bit(c[1])});

  Graph ladder = named::circular_ladder(4);
  TwoFactor lt = TwoFactor::from_cycles(ladder, {{0, 1, 2, 3}, {4, 5, 6, 7}});
  auto even = phi_outcomes(mask_of(lt.cycle(0)), lt);
  CHECK(even.size() == 2);
  CHECK(even[0].prob == Rational(1, 2));
}

TEST_CASE("exact law matches the reference enumeration") {
  std::vector<Graph> gs{testing::petersen_graph(), named::complete_bipartite(3, 3), named::circular_ladder(5),
                        named::generalized_petersen(7, 2)};
  for (const Graph& g : gs) {
    TwoFactor tf = select_two_factor(g);
    auto law = enumerate_distribution(g, tf);
    ReferenceSampler ref{g, tf};
    CHECK(law.dist == ref.law());
    Rational total(0);
    for (const auto& [s, p] : law.dist) {
      CHECK(g.is_independent(s));
      total += p;
    }
    CHECK(total == 1);
    auto rec = enumerate_distribution(g, tf, {}, {Phase4Feasibility::kRecompute});
    CHECK(rec.dist == law.dist);
  }
}

TEST_CASE("exact law holds for every 2-factor of small graphs") {
  Graph ladder = named::circular_ladder(5);
  for (const auto& m : enumerate_perfect_matchings(ladder)) {
    TwoFactor tf = TwoFactor::from_matching(ladder, m);
    ReferenceSampler ref{ladder, tf};
    CHECK(enumerate_distribution(ladder, tf).dist == ref.law());
  }
}

TEST_CASE("guards") {
  Graph p72 = named::generalized_petersen(7, 2);
  TwoFactor tf = select_two_factor(p72);
  CHECK_THROWS_AS(enumerate_distribution(p72, tf, {4, 1 << 20}), GuardExceeded);
  CHECK_THROWS_AS(enumerate_distribution(p72, tf, {1 << 16, 10}), GuardExceeded);
}

TEST_CASE("monte carlo is seeded and thread-independent") {
  Graph pet = testing::petersen_graph();
  TwoFactor tf = select_two_factor(pet);
  auto a = monte_carlo(pet, tf, 50000, 42);
  auto b = monte_carlo(pet, tf, 50000, 42);
  CHECK(a.counts == b.counts);
  CHECK(a.violations == 0);
  auto c = monte_carlo(pet, tf, 50000, 43);
  CHECK(a.counts != c.counts);
  setenv("FRACCHROM_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  auto d = monte_carlo(pet, tf, 50000, 42);
  unsetenv("FRACCHROM_THREADS");
  CHECK(d.counts == a.counts);
  auto law = enumerate_distribution(pet, tf);
  for (Vertex v = 0; v < 10; ++v) CHECK(std::abs(a.frequency(v) - to_double(law.marginals[v])) < 5 * a.std_error(v));
}

TEST_CASE("single runs draw from the exact support") {
  Graph g = named::generalized_petersen(7, 2);
  TwoFactor tf = select_two_factor(g);
  auto law = enumerate_distribution(g, tf);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 2000; ++i) {
    Sample s = run_phases_1_4(g, tf, rng);
    CHECK(law.dist.count(s.output) == 1);
    CHECK((s.s1 & ~s.heads) == 0);
  }
}
