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

#ifndef FRACCHROM_SAMPLER_HPP
#define FRACCHROM_SAMPLER_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "fracchrom/graph.hpp"
#include "fracchrom/two_factor.hpp"

namespace fracchrom {

struct Template;

// Exact law over independent sets, keyed by member mask.
using Distribution = std::map<VertexSet, Rational>;

// When Phase 4 looks at feasibility: as computed at the start of Phase 3, or
// re-evaluated after the Phase-3 additions. Both give the same output.
enum class Phase4Feasibility { kStart, kRecompute };

struct SamplerOptions {
  Phase4Feasibility phase4 = Phase4Feasibility::kStart;
};

struct EnumerationLimits {
  std::int64_t max_orientations = std::int64_t{1} << 16;
  std::int64_t max_branches = std::int64_t{1} << 20;
};

struct PhiOutcome {
  VertexSet chosen = 0;
  Rational prob;
};

// Maximal subsets of x inducing connected subgraphs of F, in order of cycle
// index and then cycle position of the run's first vertex.
std::vector<VertexSet> runs_of(VertexSet x, const TwoFactor& tf);
std::vector<VertexSet> active_runs(VertexSet heads, const TwoFactor& tf);

// Full outcome law of the random selector on x: a path run gives its
// alternating set through the run's first vertex or the complement, each 1/2;
// a whole cycle gives each maximum independent set uniformly; components are
// independent.
std::vector<PhiOutcome> phi_outcomes(VertexSet x, const TwoFactor& tf);

// One run of Algorithm 1. `heads` holds one end of each matching edge.
struct SituationRecord {
  VertexSet heads = 0;
  VertexSet s1 = 0;
  VertexSet s3 = 0;
  VertexSet feasible = 0;  // at the start of Phase 3
  VertexSet output = 0;    // after Phase 4
  Rational prob;
};

// Deterministic completion of Phases 2-4 for fixed random choices.
struct PhaseState {
  VertexSet after_phase2 = 0;
  VertexSet feasible = 0;
};
PhaseState phases_1_2(const Graph& g, VertexSet heads, VertexSet s1);
VertexSet phase_4(const Graph& g, VertexSet feasible, VertexSet after_phase3, const SamplerOptions& opts);

// Every situation with positive probability. Probabilities sum to 1.
struct SituationTable {
  int order = 0;
  std::vector<SituationRecord> records;
};

SituationTable enumerate_situations(const Graph& g, const TwoFactor& tf, const EnumerationLimits& limits = {},
                                    const SamplerOptions& opts = {});

struct ExactLaw {
  Distribution dist;
  std::vector<Rational> marginals;
};

ExactLaw law_of(const SituationTable& table);
ExactLaw enumerate_distribution(const Graph& g, const TwoFactor& tf, const EnumerationLimits& limits = {},
                                const SamplerOptions& opts = {});
std::vector<Rational> marginals_of(const Distribution& dist, int n);

// Conformance of one situation to a template; `weak` skips the Phase-3 sets.
bool conforms(const SituationRecord& r, const Template& t, bool weak = false);
Rational event_probability(const Template& t, const SituationTable& table, bool weak = false);
Rational event_probability(const Template& t, const Graph& g, const TwoFactor& tf,
                           const EnumerationLimits& limits = {});
// Every conforming situation outputs the focus vertex (vacuous on an empty event).
bool forces(const Template& t, Vertex u, const SituationTable& table);
bool forces(const Template& t, Vertex u, const Graph& g, const TwoFactor& tf, const EnumerationLimits& limits = {});

// Randomised run of Phases 1-4.
struct Sample {
  VertexSet heads = 0;
  VertexSet s1 = 0;
  VertexSet s3 = 0;
  VertexSet output = 0;
};

class Sampler {
 public:
  Sampler(const Graph& g, const TwoFactor& tf, const SamplerOptions& opts = {});
  Sample run(std::mt19937_64& rng) const;
  const Graph& graph() const { return g_; }

 private:
  VertexSet phi(VertexSet x, std::mt19937_64& rng) const;

  Graph g_;
  TwoFactor tf_;
  SamplerOptions opts_;
  std::vector<Edge> matching_;
};

Sample run_phases_1_4(const Graph& g, const TwoFactor& tf, std::mt19937_64& rng, const SamplerOptions& opts = {});

struct MonteCarloReport {
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> counts;
  std::int64_t violations = 0;  // outputs that were not independent
  double frequency(Vertex v) const { return static_cast<double>(counts[v]) / trials; }
  double std_error(Vertex v) const;
};

// Optional post-processing of each Phase-4 output (used for Phase 5).
using PostStep = std::function<VertexSet(VertexSet, std::mt19937_64&)>;

// Trials are split into fixed blocks, each seeded from (seed, block index),
// so results do not depend on the worker count.
MonteCarloReport monte_carlo(const Graph& g, const TwoFactor& tf, std::int64_t trials, std::uint64_t seed,
                             const SamplerOptions& opts = {}, const PostStep& post = {});

// Worker count from FRACCHROM_THREADS (default 1).
int worker_count();

}  // namespace fracchrom

#endif  // FRACCHROM_SAMPLER_HPP
