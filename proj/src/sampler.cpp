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

#include "fracchrom/sampler.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "fracchrom/templates.hpp"

namespace fracchrom {

namespace {

struct Run {
  VertexSet mask = 0;
  std::vector<Vertex> walk;  // cycle order, from the run's first vertex
  bool cyclic = false;
};

std::vector<Run> runs_detail(VertexSet x, const TwoFactor& tf) {
  std::vector<Run> out;
  for (int c = 0; c < tf.num_cycles(); ++c) {
    const auto& cyc = tf.cycle(c);
    int len = static_cast<int>(cyc.size());
    int gap = -1;
    for (int i = 0; i < len; ++i)
      if (!contains(x, cyc[i])) {
        gap = i;
        break;
      }
    if (gap == -1) {
      Run r;
      r.cyclic = true;
      r.walk = cyc;
      r.mask = mask_of(cyc);
      out.push_back(std::move(r));
      continue;
    }
    std::vector<Run> here;
    Run cur;
    for (int k = 1; k <= len; ++k) {
      Vertex v = cyc[(gap + k) % len];
      if (contains(x, v)) {
        cur.walk.push_back(v);
        cur.mask |= bit(v);
      } else if (!cur.walk.empty()) {
        here.push_back(std::move(cur));
        cur = Run{};
      }
    }
    std::sort(here.begin(), here.end(),
              [&](const Run& a, const Run& b) { return tf.position(a.walk[0]) < tf.position(b.walk[0]); });
    for (auto& r : here) out.push_back(std::move(r));
  }
  return out;
}

// Maximum independent sets of a run, each with its probability.
std::vector<PhiOutcome> run_outcomes(const Run& r) {
  std::vector<PhiOutcome> out;
  int len = static_cast<int>(r.walk.size());
  if (!r.cyclic || len % 2 == 0) {
    VertexSet alt = 0;
    for (int i = 0; i < len; i += 2) alt |= bit(r.walk[i]);
    out.push_back({alt, Rational(1, 2)});
    out.push_back({r.mask & ~alt, Rational(1, 2)});
    return out;
  }
  for (int i = 0; i < len; ++i) {
    VertexSet s = 0;
    for (int j = 0; j <= (len - 3) / 2; ++j) s |= bit(r.walk[(i + 2 * j + 1) % len]);
    out.push_back({s, Rational(1, len)});
  }
  return out;
}

std::int64_t outcome_count(const std::vector<Run>& runs) {
  std::int64_t total = 1;
  for (const auto& r : runs) {
    std::int64_t k = (r.cyclic && r.walk.size() % 2) ? static_cast<std::int64_t>(r.walk.size()) : 2;
    if (total > (std::int64_t{1} << 40) / k) return std::int64_t{1} << 40;
    total *= k;
  }
  return total;
}

std::vector<PhiOutcome> product_outcomes(const std::vector<Run>& runs) {
  std::vector<PhiOutcome> acc{{0, Rational(1)}};
  for (const auto& r : runs) {
    auto opts = run_outcomes(r);
    std::vector<PhiOutcome> next;
    next.reserve(acc.size() * opts.size());
    for (const auto& a : acc)
      for (const auto& o : opts) next.push_back({a.chosen | o.chosen, a.prob * o.prob});
    acc = std::move(next);
  }
  return acc;
}

VertexSet neighbourhood_of(const Graph& g, VertexSet s) {
  VertexSet out = 0;
  for (Vertex v : members(s)) out |= g.neighbourhood(v);
  return out;
}

void require_mask(const Graph& g) {
  if (!g.fits_mask()) throw GuardExceeded("exact engines require n <= 64");
}

}  // namespace

std::vector<VertexSet> runs_of(VertexSet x, const TwoFactor& tf) {
  std::vector<VertexSet> out;
  for (const auto& r : runs_detail(x, tf)) out.push_back(r.mask);
  return out;
}

std::vector<VertexSet> active_runs(VertexSet heads, const TwoFactor& tf) { return runs_of(heads, tf); }

std::vector<PhiOutcome> phi_outcomes(VertexSet x, const TwoFactor& tf) { return product_outcomes(runs_detail(x, tf)); }

PhaseState phases_1_2(const Graph& g, VertexSet heads, VertexSet s1) {
  PhaseState st;
  VertexSet isolated = 0;
  for (Vertex v : members(heads))
    if (!(g.neighbourhood(v) & heads)) isolated |= bit(v);
  st.after_phase2 = s1 | isolated;
  st.feasible = g.all_vertices() & ~st.after_phase2 & ~neighbourhood_of(g, st.after_phase2);
  return st;
}

VertexSet phase_4(const Graph& g, VertexSet feasible, VertexSet after_phase3, const SamplerOptions& opts) {
  VertexSet pool = feasible;
  if (opts.phase4 == Phase4Feasibility::kRecompute)
    pool = g.all_vertices() & ~after_phase3 & ~neighbourhood_of(g, after_phase3);
  VertexSet add = 0;
  for (Vertex v : members(pool))
    if (!(g.neighbourhood(v) & pool)) add |= bit(v);
  return after_phase3 | add;
}

SituationTable enumerate_situations(const Graph& g, const TwoFactor& tf, const EnumerationLimits& limits,
                                    const SamplerOptions& opts) {
  require_mask(g);
  if (tf.order() != g.order()) throw PreconditionError("two-factor does not match the graph");
  auto matching = tf.matching();
  int m = static_cast<int>(matching.size());
  if (m >= 62 || (std::int64_t{1} << m) > limits.max_orientations)
    throw GuardExceeded("2^" + std::to_string(m) + " orientations exceed the limit of " +
                        std::to_string(limits.max_orientations));
  std::int64_t orientations = std::int64_t{1} << m;
  Rational base(1);
  base /= Rational(BigInt(orientations));

  int workers = std::max<std::int64_t>(1, std::min<std::int64_t>(worker_count(), orientations));
  std::vector<std::vector<SituationRecord>> parts(workers);
  std::atomic<std::int64_t> branches{0};
  std::atomic<bool> blown{false};

  auto work = [&](int w) {
    std::int64_t lo = orientations * w / workers, hi = orientations * (w + 1) / workers;
    for (std::int64_t o = lo; o < hi && !blown; ++o) {
      VertexSet heads = 0;
      for (int i = 0; i < m; ++i) heads |= bit(((o >> i) & 1) ? matching[i].second : matching[i].first);
      auto active = runs_detail(heads, tf);
      for (const auto& p1 : product_outcomes(active)) {
        PhaseState st = phases_1_2(g, heads, p1.chosen);
        auto feasible_runs = runs_detail(st.feasible, tf);
        std::int64_t k = outcome_count(feasible_runs);
        if ((branches += k) > limits.max_branches) {
          blown = true;
          return;
        }
        for (const auto& p3 : product_outcomes(feasible_runs)) {
          SituationRecord r;
          r.heads = heads;
          r.s1 = p1.chosen;
          r.s3 = p3.chosen;
          r.feasible = st.feasible;
          r.output = phase_4(g, st.feasible, st.after_phase2 | p3.chosen, opts);
          r.prob = base * p1.prob * p3.prob;
          parts[w].push_back(std::move(r));
        }
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (blown)
    throw GuardExceeded("more than " + std::to_string(limits.max_branches) + " selector branches (" +
                        std::to_string(orientations) + " orientations)");
  SituationTable table;
  table.order = g.order();
  for (auto& p : parts)
    for (auto& r : p) table.records.push_back(std::move(r));
  return table;
}

std::vector<Rational> marginals_of(const Distribution& dist, int n) {
  std::vector<Rational> out(n, Rational(0));
  for (const auto& [s, p] : dist)
    for (Vertex v : members(s)) out[v] += p;
  return out;
}

ExactLaw law_of(const SituationTable& table) {
  ExactLaw law;
  for (const auto& r : table.records) law.dist[r.output] += r.prob;
  law.marginals = marginals_of(law.dist, table.order);
  Rational total(0);
  for (const auto& [s, p] : law.dist) total += p;
  if (total != 1) throw InvariantViolation("situation probabilities sum to " + to_string(total));
  return law;
}

ExactLaw enumerate_distribution(const Graph& g, const TwoFactor& tf, const EnumerationLimits& limits,
                                const SamplerOptions& opts) {
  return law_of(enumerate_situations(g, tf, limits, opts));
}

bool conforms(const SituationRecord& r, const Template& t, bool weak) {
  if (t.heads() & ~r.heads) return false;
  if ((t.star & ~r.s1) || (t.xstar & r.s1)) return false;
  if (weak) return true;
  return !(t.tri & ~r.s3) && !(t.xtri & r.s3);
}

Rational event_probability(const Template& t, const SituationTable& table, bool weak) {
  Rational total(0);
  for (const auto& r : table.records)
    if (conforms(r, t, weak)) total += r.prob;
  return total;
}

Rational event_probability(const Template& t, const Graph& g, const TwoFactor& tf, const EnumerationLimits& limits) {
  return event_probability(t, enumerate_situations(g, tf, limits));
}

bool forces(const Template& t, Vertex u, const SituationTable& table) {
  for (const auto& r : table.records)
    if (conforms(r, t) && !contains(r.output, u)) return false;
  return true;
}

bool forces(const Template& t, Vertex u, const Graph& g, const TwoFactor& tf, const EnumerationLimits& limits) {
  return forces(t, u, enumerate_situations(g, tf, limits));
}

// ---------------------------------------------------------------------------

Sampler::Sampler(const Graph& g, const TwoFactor& tf, const SamplerOptions& opts)
    : g_(g), tf_(tf), opts_(opts), matching_(tf.matching()) {
  require_mask(g);
  if (tf.order() != g.order()) throw PreconditionError("two-factor does not match the graph");
}

VertexSet Sampler::phi(VertexSet x, std::mt19937_64& rng) const {
  VertexSet out = 0;
  for (const auto& r : runs_detail(x, tf_)) {
    int len = static_cast<int>(r.walk.size());
    if (r.cyclic && len % 2) {
      int i = std::uniform_int_distribution<int>(0, len - 1)(rng);
      for (int j = 0; j <= (len - 3) / 2; ++j) out |= bit(r.walk[(i + 2 * j + 1) % len]);
    } else {
      VertexSet alt = 0;
      for (int i = 0; i < len; i += 2) alt |= bit(r.walk[i]);
      out |= (rng() & 1) ? alt : (r.mask & ~alt);
    }
  }
  return out;
}

Sample Sampler::run(std::mt19937_64& rng) const {
  Sample s;
  std::uint64_t coins = rng();
  for (size_t i = 0; i < matching_.size(); ++i) {
    if (i == 64) coins = rng();
    s.heads |= bit(((coins >> (i % 64)) & 1) ? matching_[i].second : matching_[i].first);
  }
  s.s1 = phi(s.heads, rng);
  PhaseState st = phases_1_2(g_, s.heads, s.s1);
  s.s3 = phi(st.feasible, rng);
  s.output = phase_4(g_, st.feasible, st.after_phase2 | s.s3, opts_);
  return s;
}

Sample run_phases_1_4(const Graph& g, const TwoFactor& tf, std::mt19937_64& rng, const SamplerOptions& opts) {
  return Sampler(g, tf, opts).run(rng);
}

double MonteCarloReport::std_error(Vertex v) const {
  double p = frequency(v);
  return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

int worker_count() {
  const char* env = std::getenv("FRACCHROM_THREADS");
  if (!env) return 1;
  int k = std::atoi(env);
  return k >= 1 ? k : 1;
}

MonteCarloReport monte_carlo(const Graph& g, const TwoFactor& tf, std::int64_t trials, std::uint64_t seed,
                             const SamplerOptions& opts, const PostStep& post) {
  if (trials < 1) throw PreconditionError("trials must be at least 1");
  Sampler sampler(g, tf, opts);
  constexpr std::int64_t kBlock = 1 << 14;
  std::int64_t blocks = (trials + kBlock - 1) / kBlock;
  int workers = static_cast<int>(std::max<std::int64_t>(1, std::min<std::int64_t>(worker_count(), blocks)));
  int n = g.order();
  std::vector<std::vector<std::int64_t>> counts(workers, std::vector<std::int64_t>(n, 0));
  std::vector<std::int64_t> bad(workers, 0);
  auto work = [&](int w) {
    for (std::int64_t b = w; b < blocks; b += workers) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
      std::mt19937_64 rng(seq);
      std::int64_t end = std::min(trials, (b + 1) * kBlock);
      for (std::int64_t t = b * kBlock; t < end; ++t) {
        VertexSet out = sampler.run(rng).output;
        if (post) out = post(out, rng);
        if (!g.is_independent(out)) ++bad[w];
        for (Vertex v : members(out)) ++counts[w][v];
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  MonteCarloReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.counts.assign(n, 0);
  for (int w = 0; w < workers; ++w) {
    rep.violations += bad[w];
    for (Vertex v = 0; v < n; ++v) rep.counts[v] += counts[w][v];
  }
  return rep;
}

}  // namespace fracchrom
