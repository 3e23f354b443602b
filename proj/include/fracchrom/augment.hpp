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

#ifndef FRACCHROM_AUGMENT_HPP
#define FRACCHROM_AUGMENT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fracchrom/graph.hpp"
#include "fracchrom/sampler.hpp"
#include "fracchrom/two_factor.hpp"

namespace fracchrom {

enum class DefType { kNone, kType0, kI, kIa, kIb, kII, kIIa, kIII, kIaStar, kIbStar, kIIStar, kIIaStar, kIIIStar };

std::string to_string(DefType t);
// Deficit of a type (negative), e.g. -2 for Ia; 0 for kNone.
Rational type_epsilon(DefType t);

bool edge_in_four_cycle(const Graph& g, Vertex a, Vertex b);
// Is the path a-b-c contained in some 4-cycle?
bool path_in_four_cycle(const Graph& g, Vertex a, Vertex b, Vertex c);

// +1, 0 or -1 for a vertex whose mate lies on another cycle.
Rational epsilon_nochord(const Graph& g, const TwoFactor& tf, Vertex u);

struct ChordClass {
  std::vector<DefType> matches;  // every row of the table that matches
  DefType type = DefType::kNone;
};

// Requires the matching edge at u to be a chord lying in no 4-cycle.
ChordClass classify_chord(const Graph& g, const TwoFactor& tf, Vertex u);

struct DeficiencyRecord {
  Vertex vertex = -1;
  DefType type = DefType::kNone;
  Rational epsilon;
  std::optional<Vertex> sponsor;
  bool deficient() const { return type != DefType::kNone; }
};

// One record per vertex, with the epsilon extension applied to vertices
// whose mate is a deficient vertex on the same cycle.
std::vector<DeficiencyRecord> deficiency_report(const Graph& g, const TwoFactor& tf);
std::vector<Rational> epsilon_full(const Graph& g, const TwoFactor& tf);

// Sponsor of a deficient vertex, given the full epsilon vector.
Vertex sponsor(const TwoFactor& tf, const std::vector<Rational>& epsilon, Vertex u, DefType type);

bool favourable(const Graph& g, Vertex u, Vertex sponsor, VertexSet j);
Rational receptivity(const Graph& g, Vertex u, Vertex sponsor, const Distribution& dist);

struct Phase5Plan {
  std::vector<Vertex> order;         // deficient vertices, |eps| nondecreasing
  std::vector<Rational> deficit;     // |eps(u_i)| / 256
  std::vector<Vertex> sponsors;
  std::vector<VertexSet> earlier;    // deficient neighbours placed before u_i
  std::vector<VertexSet> sets;       // support of the Phase-4 law, ascending
  std::vector<Rational> set_prob;
  std::map<VertexSet, int> set_index;
  std::vector<std::vector<Rational>> p;     // p[i][j]
  std::vector<std::vector<Rational>> bias;  // conditional coin bias p/q
  struct Coin {
    std::uint64_t threshold = 0;  // accept when a 64-bit draw is below this
    bool always = false;
  };
  std::vector<std::vector<Coin>> coins;
  std::vector<Rational> receptivities;
  std::vector<Rational> eta;                // sum of |eps|/256 over earlier + self
};

struct PlanOptions {
  // Explicit deficient order; must list every deficient vertex with |eps|
  // nondecreasing.
  std::optional<std::vector<Vertex>> order;
};

// Throws PreconditionError when some receptivity is below eta, and
// InvariantViolation when a coin would need a bias above 1.
Phase5Plan build_phase5_plan(const Graph& g, const TwoFactor& tf, const Distribution& dist,
                             const PlanOptions& opts = {});
Phase5Plan build_phase5_plan(const Graph& g, const std::vector<DeficiencyRecord>& report, const Distribution& dist,
                             const PlanOptions& opts = {});

// Failed properties of the plan (favourable support, exact row sums, column
// bounds); empty when all hold.
std::vector<std::string> check_plan(const Graph& g, const Phase5Plan& plan);

// One randomised pass of Phase 5 on a Phase-4 output.
VertexSet run_phase5(VertexSet j, const Phase5Plan& plan, std::mt19937_64& rng);

struct Phase5Law {
  Distribution dist;
  std::vector<Rational> marginals;
  std::vector<Rational> added;    // per plan index: Pr(u_i added)
  std::vector<Rational> removed;  // per vertex: Pr(removed as a sponsor)
};

Phase5Law push_through_phase5(const Distribution& phase4, const Phase5Plan& plan, int n);

struct Phase5Result {
  ExactLaw phase4;
  std::vector<DeficiencyRecord> report;
  Phase5Plan plan;
  Phase5Law law;
};

Phase5Result exact_phase5_distribution(const Graph& g, const TwoFactor& tf, const EnumerationLimits& limits = {},
                                       const SamplerOptions& opts = {});

}  // namespace fracchrom

#endif  // FRACCHROM_AUGMENT_HPP
