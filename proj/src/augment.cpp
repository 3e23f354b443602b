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

#include "fracchrom/augment.hpp"

#include <algorithm>
#include <set>

namespace fracchrom {

std::string to_string(DefType t) {
  switch (t) {
    case DefType::kNone: return "none";
    case DefType::kType0: return "0";
    case DefType::kI: return "I";
    case DefType::kIa: return "Ia";
    case DefType::kIb: return "Ib";
    case DefType::kII: return "II";
    case DefType::kIIa: return "IIa";
    case DefType::kIII: return "III";
    case DefType::kIaStar: return "Ia*";
    case DefType::kIbStar: return "Ib*";
    case DefType::kIIStar: return "II*";
    case DefType::kIIaStar: return "IIa*";
    case DefType::kIIIStar: return "III*";
  }
  return "?";
}

Rational type_epsilon(DefType t) {
  switch (t) {
    case DefType::kNone: return Rational(0);
    case DefType::kType0: return Rational(-1);
    case DefType::kI: return Rational(-1, 2);
    case DefType::kIa:
    case DefType::kIaStar: return Rational(-2);
    case DefType::kIb:
    case DefType::kIbStar: return Rational(-3, 2);
    case DefType::kII:
    case DefType::kIIStar: return Rational(-1, 8);
    case DefType::kIIa:
    case DefType::kIIaStar: return Rational(-1, 2);
    case DefType::kIII:
    case DefType::kIIIStar: return Rational(-1, 8);
  }
  return Rational(0);
}

bool edge_in_four_cycle(const Graph& g, Vertex a, Vertex b) {
  for (Vertex x : g.neighbours(a)) {
    if (x == b) continue;
    for (Vertex y : g.neighbours(b))
      if (y != a && y != x && g.adjacent(x, y)) return true;
  }
  return false;
}

bool path_in_four_cycle(const Graph& g, Vertex a, Vertex b, Vertex c) {
  for (Vertex x : g.neighbours(a))
    if (x != b && x != c && g.adjacent(x, c)) return true;
  return false;
}

Rational epsilon_nochord(const Graph& g, const TwoFactor& tf, Vertex u) {
  Vertex v = tf.mate(u);
  if (tf.same_cycle(u, v)) throw PreconditionError("matching edge at " + std::to_string(u) + " is a chord");
  if (edge_in_four_cycle(g, u, v)) return Rational(1);
  VertexSet cv = mask_of(tf.cycle(tf.cycle_of(v)));
  for (VertexSet q : four_cycles(g))
    for (Vertex w : {tf.navigate(u, -1), tf.navigate(u, 1)})
      if (contains(q, w) && (q & cv)) return Rational(-1);
  return Rational(0);
}

namespace {

// Table rows evaluated with the cycle orientation multiplied by `s`.
struct Oriented {
  const TwoFactor& tf;
  int s;
  Vertex at(Vertex x, int k) const { return tf.navigate(x, s * k); }
  int dist(Vertex x, Vertex y) const { return s > 0 ? tf.distance(x, y) : tf.distance(y, x); }
  bool m(Vertex a, Vertex b) const { return tf.mate(a) == b; }
};

void oriented_matches(const Oriented& o, Vertex u, bool mirror, std::vector<DefType>& out) {
  Vertex v = o.tf.mate(u);
  int len = o.tf.cycle_length(o.tf.cycle_of(u));
  int d = o.dist(u, v), back = len - d;
  if (d != 4) return;
  auto U = [&](int k) { return o.at(u, k); };
  auto V = [&](int k) { return o.at(v, k); };
  bool core_a = o.m(U(2), V(1)) && o.m(U(-2), V(-1));
  if (core_a && !o.m(U(1), V(2))) out.push_back(mirror ? DefType::kIaStar : DefType::kIa);
  if (core_a && o.m(U(1), V(2))) out.push_back(mirror ? DefType::kIbStar : DefType::kIb);
  bool core_b = o.m(U(-2), V(1)) && o.m(U(-3), U(1));
  if (back >= 7 && core_b && o.m(U(-1), V(2)) && !o.m(V(3), V(-1)))
    out.push_back(mirror ? DefType::kIIStar : DefType::kII);
  if (back == 6 && core_b && o.m(U(-1), U(-4))) out.push_back(mirror ? DefType::kIIaStar : DefType::kIIa);
  if (back == 8 && core_b && o.m(V(3), V(-1)) && o.m(U(-1), U(-4)))
    out.push_back(mirror ? DefType::kIIIStar : DefType::kIII);
}

}  // namespace

ChordClass classify_chord(const Graph& g, const TwoFactor& tf, Vertex u) {
  Vertex v = tf.mate(u);
  if (!tf.same_cycle(u, v)) throw PreconditionError("matching edge at " + std::to_string(u) + " is not a chord");
  if (edge_in_four_cycle(g, u, v))
    throw PreconditionError("chord at " + std::to_string(u) + " lies in a 4-cycle");
  std::vector<DefType> found;
  oriented_matches({tf, 1}, u, false, found);
  oriented_matches({tf, -1}, u, true, found);
  bool a_family = false;
  for (DefType t : found)
    if (t == DefType::kIa || t == DefType::kIb || t == DefType::kIaStar || t == DefType::kIbStar) a_family = true;
  ChordClass c;
  if (!a_family && path_in_four_cycle(g, tf.navigate(v, -1), v, tf.navigate(v, 1)) &&
      !path_in_four_cycle(g, tf.navigate(u, -1), u, tf.navigate(u, 1)))
    c.matches.push_back(DefType::kI);
  c.matches.insert(c.matches.end(), found.begin(), found.end());
  if (!c.matches.empty()) c.type = c.matches.front();
  return c;
}

Vertex sponsor(const TwoFactor& tf, const std::vector<Rational>& epsilon, Vertex u, DefType type) {
  if (type == DefType::kNone) throw PreconditionError("vertex " + std::to_string(u) + " is not deficient");
  if (type != DefType::kType0) return tf.mate(u);
  Vertex minus = tf.navigate(u, -1), plus = tf.navigate(u, 1);
  if (epsilon[minus] == 1) return minus;
  if (epsilon[plus] == 1) return plus;
  throw InvariantViolation("type-0 vertex " + std::to_string(u) + " has no F-neighbour with epsilon 1");
}

std::vector<DeficiencyRecord> deficiency_report(const Graph& g, const TwoFactor& tf) {
  if (!g.fits_mask()) throw GuardExceeded("deficiency analysis requires n <= 64");
  int n = g.order();
  std::vector<DeficiencyRecord> rec(n);
  auto cycles4 = four_cycles(g);
  std::vector<char> chord_pending(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    rec[u].vertex = u;
    Vertex v = tf.mate(u);
    if (!tf.same_cycle(u, v)) {
      if (edge_in_four_cycle(g, u, v)) {
        rec[u].epsilon = 1;
        continue;
      }
      VertexSet cv = mask_of(tf.cycle(tf.cycle_of(v)));
      bool touch = false;
      for (VertexSet q : cycles4)
        for (Vertex w : {tf.navigate(u, -1), tf.navigate(u, 1)})
          if (contains(q, w) && (q & cv)) touch = true;
      rec[u].epsilon = touch ? -1 : 0;
      if (touch) rec[u].type = DefType::kType0;
      continue;
    }
    if (!edge_in_four_cycle(g, u, v)) rec[u].type = classify_chord(g, tf, u).type;
    if (rec[u].deficient()) rec[u].epsilon = type_epsilon(rec[u].type);
    else chord_pending[u] = 1;
  }
  for (Vertex u = 0; u < n; ++u)
    if (chord_pending[u]) {
      const auto& m = rec[tf.mate(u)];
      rec[u].epsilon = m.deficient() ? Rational(-m.epsilon) : Rational(0);
    }
  std::vector<Rational> eps(n);
  for (Vertex u = 0; u < n; ++u) eps[u] = rec[u].epsilon;
  for (Vertex u = 0; u < n; ++u)
    if (rec[u].deficient()) rec[u].sponsor = sponsor(tf, eps, u, rec[u].type);
  return rec;
}

std::vector<Rational> epsilon_full(const Graph& g, const TwoFactor& tf) {
  std::vector<Rational> out;
  for (const auto& r : deficiency_report(g, tf)) out.push_back(r.epsilon);
  return out;
}

bool favourable(const Graph& g, Vertex u, Vertex s, VertexSet j) { return (g.closed_neighbourhood(u) & j) == bit(s); }

Rational receptivity(const Graph& g, Vertex u, Vertex s, const Distribution& dist) {
  Rational total(0);
  for (const auto& [j, p] : dist)
    if (favourable(g, u, s, j)) total += p;
  return total;
}

// ---------------------------------------------------------------------------
// Phase 5

namespace {

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Phase5Plan::Coin coin_for(const Rational& b) {
  Phase5Plan::Coin c;
  if (b >= 1) {
    c.always = true;
    return c;
  }
  if (b <= 0) return c;
  BigInt scaled = BigInt(b.get_num() << 64) / b.get_den();
  static_assert(sizeof(unsigned long) >= 8, "64-bit unsigned long expected");
  c.threshold = scaled.get_ui();
  return c;
}

// Evolves the law of the set of vertices added so far for one Phase-4 set.
// `visit(i, added_before_prob)` is called after each active step.
template <typename Visit>
std::map<VertexSet, Rational> evolve(const Phase5Plan& plan, int j, Visit&& visit) {
  std::map<VertexSet, Rational> states{{0, Rational(1)}};
  for (size_t i = 0; i < plan.order.size(); ++i) {
    const Rational& b = plan.bias[i][j];
    if (b == 0) continue;
    std::map<VertexSet, Rational> next;
    Rational added(0);
    for (const auto& [a, pr] : states) {
      if (a & plan.earlier[i]) {
        next[a] += pr;
        continue;
      }
      Rational yes = pr * b;
      added += yes;
      next[a | bit(plan.order[i])] += yes;
      if (b != 1) next[a] += pr - yes;
    }
    states = std::move(next);
    visit(i, added);
  }
  return states;
}

}  // namespace

Phase5Plan build_phase5_plan(const Graph& g, const std::vector<DeficiencyRecord>& report, const Distribution& dist,
                             const PlanOptions& opts) {
  Phase5Plan plan;
  std::vector<Vertex> deficient;
  for (const auto& r : report)
    if (r.deficient()) deficient.push_back(r.vertex);
  if (opts.order) {
    plan.order = *opts.order;
    auto a = plan.order, b = deficient;
    std::sort(a.begin(), a.end());
    if (a != b) throw PreconditionError("plan order must list exactly the deficient vertices");
    for (size_t i = 1; i < plan.order.size(); ++i)
      if (abs_q(report[plan.order[i - 1]].epsilon) > abs_q(report[plan.order[i]].epsilon))
        throw PreconditionError("plan order is not monotone in |epsilon|");
  } else {
    plan.order = deficient;
    std::stable_sort(plan.order.begin(), plan.order.end(), [&](Vertex x, Vertex y) {
      return abs_q(report[x].epsilon) < abs_q(report[y].epsilon);
    });
  }
  for (const auto& [j, p] : dist) {
    plan.set_index[j] = static_cast<int>(plan.sets.size());
    plan.sets.push_back(j);
    plan.set_prob.push_back(p);
  }
  int r = static_cast<int>(plan.order.size()), s = static_cast<int>(plan.sets.size());
  std::set<Vertex> used_sponsors;
  VertexSet placed = 0;
  for (int i = 0; i < r; ++i) {
    Vertex u = plan.order[i];
    plan.deficit.push_back(abs_q(report[u].epsilon) / 256);
    Vertex sp = report[u].sponsor.value();
    if (!used_sponsors.insert(sp).second)
      throw InvariantViolation("vertex " + std::to_string(sp) + " sponsors two deficient vertices");
    plan.sponsors.push_back(sp);
    plan.earlier.push_back(g.neighbourhood(u) & placed);
    placed |= bit(u);
    Rational eta = plan.deficit.back();
    for (Vertex w : members(plan.earlier.back())) eta += abs_q(report[w].epsilon) / 256;
    plan.eta.push_back(eta);
    plan.receptivities.push_back(receptivity(g, u, sp, dist));
    if (plan.receptivities.back() < eta)
      throw PreconditionError("receptivity of vertex " + std::to_string(u) + " is " +
                              to_string(plan.receptivities.back() * 256) + "/256, below eta = " +
                              to_string(eta * 256) + "/256");
  }
  std::vector<int> index_of(g.order(), -1);
  for (int i = 0; i < r; ++i) index_of[plan.order[i]] = i;
  plan.p.assign(r, std::vector<Rational>(s, Rational(0)));
  for (int i = 0; i < r; ++i) {
    Rational filled(0);
    for (int j = 0; j < s; ++j) {
      if (!favourable(g, plan.order[i], plan.sponsors[i], plan.sets[j])) continue;
      Rational by_row = (plan.deficit[i] - filled) / plan.set_prob[j];
      Rational by_col(1);
      for (Vertex w : members(plan.earlier[i])) by_col -= plan.p[index_of[w]][j];
      Rational v = std::min(by_row, by_col);
      if (v < 0) v = 0;
      plan.p[i][j] = v;
      filled += v * plan.set_prob[j];
    }
    if (filled != plan.deficit[i])
      throw InvariantViolation("plan row for vertex " + std::to_string(plan.order[i]) + " sums to " +
                               to_string(filled * 256) + "/256 instead of " + to_string(plan.deficit[i] * 256) +
                               "/256");
  }
  plan.bias.assign(r, std::vector<Rational>(s, Rational(0)));
  plan.coins.assign(r, std::vector<Phase5Plan::Coin>(s));
  for (int j = 0; j < s; ++j) {
    // Biases are fixed step by step: step i sees the law produced by the
    // biases of steps before it.
    std::map<VertexSet, Rational> states{{0, Rational(1)}};
    for (int i = 0; i < r; ++i) {
      const Rational& target = plan.p[i][j];
      if (target == 0) continue;
      Rational free(0);
      for (const auto& [a, pr] : states)
        if (!(a & plan.earlier[i])) free += pr;
      if (free < target)
        throw InvariantViolation("infeasible coin bias for vertex " + std::to_string(plan.order[i]) + ": needs " +
                                 to_string(target) + " but only " + to_string(free) + " is available");
      Rational b = target / free;
      plan.bias[i][j] = b;
      plan.coins[i][j] = coin_for(b);
      std::map<VertexSet, Rational> next;
      for (const auto& [a, pr] : states) {
        if (a & plan.earlier[i]) {
          next[a] += pr;
          continue;
        }
        Rational yes = pr * b;
        next[a | bit(plan.order[i])] += yes;
        if (b != 1) next[a] += pr - yes;
      }
      states = std::move(next);
    }
  }
  return plan;
}

Phase5Plan build_phase5_plan(const Graph& g, const TwoFactor& tf, const Distribution& dist, const PlanOptions& opts) {
  return build_phase5_plan(g, deficiency_report(g, tf), dist, opts);
}

std::vector<std::string> check_plan(const Graph& g, const Phase5Plan& plan) {
  std::vector<std::string> bad;
  int r = static_cast<int>(plan.order.size()), s = static_cast<int>(plan.sets.size());
  std::vector<int> index_of(g.order(), -1);
  for (int i = 0; i < r; ++i) index_of[plan.order[i]] = i;
  for (int i = 0; i < r; ++i) {
    Vertex u = plan.order[i];
    Rational row(0);
    for (int j = 0; j < s; ++j) {
      const Rational& p = plan.p[i][j];
      if (p < 0 || p > 1) bad.push_back("p out of [0,1] at vertex " + std::to_string(u));
      if (p != 0 && !favourable(g, u, plan.sponsors[i], plan.sets[j]))
        bad.push_back("vertex " + std::to_string(u) + " has weight on an unfavourable set");
      row += p * plan.set_prob[j];
      Rational col = p;
      for (Vertex w : members(plan.earlier[i])) col += plan.p[index_of[w]][j];
      if (col > 1) bad.push_back("column bound exceeded at vertex " + std::to_string(u));
    }
    if (row != plan.deficit[i]) bad.push_back("row sum of vertex " + std::to_string(u) + " is " + to_string(row));
  }
  return bad;
}

VertexSet run_phase5(VertexSet j, const Phase5Plan& plan, std::mt19937_64& rng) {
  auto it = plan.set_index.find(j);
  if (it == plan.set_index.end()) return j;
  int idx = it->second;
  VertexSet added = 0, removed = 0;
  for (size_t i = 0; i < plan.order.size(); ++i) {
    const auto& coin = plan.coins[i][idx];
    if (!coin.always && coin.threshold == 0) continue;
    if (added & plan.earlier[i]) continue;
    if (coin.always || rng() < coin.threshold) {
      added |= bit(plan.order[i]);
      removed |= bit(plan.sponsors[i]);
    }
  }
  return (j | added) & ~removed;
}

Phase5Law push_through_phase5(const Distribution& phase4, const Phase5Plan& plan, int n) {
  Phase5Law law;
  int r = static_cast<int>(plan.order.size());
  law.added.assign(r, Rational(0));
  law.removed.assign(n, Rational(0));
  for (const auto& [j, pj] : phase4) {
    auto it = plan.set_index.find(j);
    if (it == plan.set_index.end() || r == 0) {
      law.dist[j] += pj;
      continue;
    }
    int idx = it->second;
    auto states = evolve(plan, idx, [&](size_t i, const Rational& added) {
      law.added[i] += pj * added;
      law.removed[plan.sponsors[i]] += pj * added;
    });
    for (const auto& [a, pr] : states) {
      VertexSet removed = 0;
      for (size_t i = 0; i < plan.order.size(); ++i)
        if (contains(a, plan.order[i])) removed |= bit(plan.sponsors[i]);
      law.dist[(j | a) & ~removed] += pj * pr;
    }
  }
  law.marginals = marginals_of(law.dist, n);
  return law;
}

Phase5Result exact_phase5_distribution(const Graph& g, const TwoFactor& tf, const EnumerationLimits& limits,
                                       const SamplerOptions& opts) {
  Phase5Result res;
  res.phase4 = enumerate_distribution(g, tf, limits, opts);
  res.report = deficiency_report(g, tf);
  res.plan = build_phase5_plan(g, res.report, res.phase4.dist);
  res.law = push_through_phase5(res.phase4.dist, res.plan, g.order());
  for (const auto& [s, p] : res.law.dist)
    if (!g.is_independent(s)) throw InvariantViolation("phase 5 produced a dependent set");
  return res;
}

}  // namespace fracchrom
