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

#include "fracchrom/fractional_lp.hpp"

#include <algorithm>
#include <functional>

#include "fracchrom/augment.hpp"
#include "fracchrom/two_factor.hpp"

namespace fracchrom {

Rational FractionalColouring::size() const {
  Rational s(0);
  for (const auto& [set, w] : weights) s += w;
  return s;
}

Rational FractionalColouring::vertex_weight(Vertex v) const {
  Rational s(0);
  for (const auto& [set, w] : weights)
    if (contains(set, v)) s += w;
  return s;
}

bool FractionalColouring::covers(int n) const {
  for (Vertex v = 0; v < n; ++v)
    if (vertex_weight(v) < 1) return false;
  return true;
}

BigInt MultisetCertificate::total() const {
  BigInt t = 0;
  for (const auto& [s, c] : sets) t += c;
  return t;
}

// ---------------------------------------------------------------------------

std::vector<VertexSet> maximal_independent_sets(const Graph& g, int max_n) {
  if (g.order() > max_n || !g.fits_mask())
    throw GuardExceeded("maximal independent set enumeration limited to n <= " + std::to_string(max_n));
  int n = g.order();
  std::vector<VertexSet> out;
  if (n == 0) return {0};
  VertexSet all = g.all_vertices();
  // Independent sets of g are cliques of its complement.
  std::vector<VertexSet> comp(n);
  for (Vertex v = 0; v < n; ++v) comp[v] = all & ~g.closed_neighbourhood(v);
  std::function<void(VertexSet, VertexSet, VertexSet)> rec = [&](VertexSet r, VertexSet p, VertexSet x) {
    if (!p && !x) {
      out.push_back(r);
      return;
    }
    Vertex pivot = -1;
    int best = -1;
    for (Vertex u : members(p | x)) {
      int c = popcount(p & comp[u]);
      if (c > best) {
        best = c;
        pivot = u;
      }
    }
    for (Vertex v : members(p & ~comp[pivot])) {
      rec(r | bit(v), p & comp[v], x & comp[v]);
      p &= ~bit(v);
      x |= bit(v);
    }
  };
  rec(0, all, 0);
  std::sort(out.begin(), out.end());
  return out;
}

LpResult chi_f_exact(const Graph& g, int max_n) {
  LpResult res;
  int n = g.order();
  auto cols = maximal_independent_sets(g, max_n);
  res.columns = static_cast<int>(cols.size());
  if (n == 0) {
    res.value = 0;
    return res;
  }
  // Packing dual: max sum y_v, sum_{v in I} y_v <= 1 per maximal I, y >= 0.
  int m = static_cast<int>(cols.size()), width = n + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width + 1, Rational(0)));
  for (int i = 0; i < m; ++i) {
    for (Vertex v : members(cols[i])) t[i][v] = 1;
    t[i][n + i] = 1;
    t[i][width] = 1;
  }
  std::vector<Rational> obj(width + 1, Rational(0));
  for (Vertex v = 0; v < n; ++v) obj[v] = -1;
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  for (;;) {
    int enter = -1;
    for (int j = 0; j < width; ++j)
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][width] / t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw InvariantViolation("packing LP reported unbounded");
    Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    auto eliminate = [&](std::vector<Rational>& row) {
      Rational f = row[enter];
      if (f == 0) return;
      for (int j = 0; j <= width; ++j)
        if (t[leave][j] != 0) row[j] -= f * t[leave][j];
    };
    for (int i = 0; i < m; ++i)
      if (i != leave) eliminate(t[i]);
    eliminate(obj);
    basis[leave] = enter;
    ++res.pivots;
  }

  res.value = obj[width];
  res.dual.assign(n, Rational(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) res.dual[basis[i]] = t[i][width];
  for (int i = 0; i < m; ++i)
    if (obj[n + i] != 0) res.primal.weights[cols[i]] = obj[n + i];

  // Independent re-check of optimality.
  Rational ysum(0);
  for (const auto& y : res.dual) {
    if (y < 0) throw InvariantViolation("negative dual weight");
    ysum += y;
  }
  if (ysum != res.value) throw InvariantViolation("dual objective differs from the optimum");
  for (VertexSet c : cols) {
    Rational s(0);
    for (Vertex v : members(c)) s += res.dual[v];
    if (s > 1) throw InvariantViolation("dual packing violates a constraint");
    auto it = res.primal.weights.find(c);
    if (it != res.primal.weights.end() && s != 1) throw InvariantViolation("complementary slackness fails on a set");
  }
  if (res.primal.size() != res.value) throw InvariantViolation("primal size differs from the optimum");
  for (Vertex v = 0; v < n; ++v) {
    Rational w = res.primal.vertex_weight(v);
    if (w < 1) throw InvariantViolation("primal leaves vertex " + std::to_string(v) + " uncovered");
    if (res.dual[v] > 0 && w != 1) throw InvariantViolation("complementary slackness fails at a vertex");
  }
  for (const auto& [s, w] : res.primal.weights)
    if (w < 0) throw InvariantViolation("negative primal weight");
  return res;
}

FractionalColouring distribution_to_weighting(const Distribution& dist, const Rational& k, int n) {
  auto marg = marginals_of(dist, n);
  Rational need = 1 / k;
  for (Vertex v = 0; v < n; ++v)
    if (marg[v] < need)
      throw PreconditionError("vertex " + std::to_string(v) + " has marginal " + to_string(marg[v]) + " < " +
                              to_string(need));
  FractionalColouring w;
  for (const auto& [s, p] : dist) w.weights[s] = k * p;
  return w;
}

MultisetCertificate weighting_to_multiset(const FractionalColouring& w, int n) {
  std::map<VertexSet, Rational> cur;
  for (const auto& [s, x] : w.weights)
    if (x > 0) cur[s] += x;
  for (Vertex v = 0; v < n; ++v) {
    Rational excess = -1;
    for (const auto& [s, x] : cur)
      if (contains(s, v)) excess += x;
    if (excess < 0) throw PreconditionError("vertex " + std::to_string(v) + " has weight below 1");
    std::vector<VertexSet> holders;
    for (const auto& [s, x] : cur)
      if (contains(s, v)) holders.push_back(s);
    for (VertexSet s : holders) {
      if (excess == 0) break;
      Rational take = std::min(cur[s], excess);
      cur[s] -= take;
      if (cur[s] == 0) cur.erase(s);
      cur[s & ~bit(v)] += take;
      excess -= take;
    }
  }
  MultisetCertificate cert;
  BigInt lcm = 1;
  for (const auto& [s, x] : cur) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
  cert.n_copies = lcm;
  Rational total(0);
  for (const auto& [s, x] : cur) {
    Rational c = x * Rational(lcm);
    cert.sets.emplace_back(s, c.get_num());
    total += x;
  }
  cert.k = total;
  return cert;
}

Distribution multiset_to_distribution(const MultisetCertificate& cert) {
  Distribution d;
  Rational total(cert.total());
  for (const auto& [s, c] : cert.sets) d[s] += Rational(c) / total;
  return d;
}

CertificateVerdict verify_certificate(const Graph& g, const MultisetCertificate& cert) {
  CertificateVerdict v;
  auto fail = [&](const std::string& what) {
    v.ok = false;
    v.problems.push_back(what);
  };
  int n = g.order();
  if (cert.n_copies <= 0) fail("N must be positive");
  std::vector<BigInt> cover(n, 0);
  for (const auto& [s, c] : cert.sets) {
    if (c < 0) fail("negative multiplicity");
    if (n < 64 && (s >> n)) fail("set mentions a vertex outside the graph");
    for (auto [a, b] : g.edges())
      if (contains(s, a) && contains(s, b))
        fail("set contains both ends of edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    for (Vertex x : members(s))
      if (x < n) cover[x] += c;
  }
  for (Vertex x = 0; x < n; ++x)
    if (cover[x] != cert.n_copies)
      fail("vertex " + std::to_string(x) + " is covered " + cover[x].get_str() + " times, expected " +
           cert.n_copies.get_str());
  Rational slots = cert.k * Rational(cert.n_copies);
  if (slots != Rational(cert.total()))
    fail("certificate holds " + cert.total().get_str() + " sets but k*N = " + to_string(slots));
  return v;
}

// ---------------------------------------------------------------------------
// 32/11 certificates along the reduction tree

namespace {

using Slots = std::vector<std::pair<VertexSet, BigInt>>;

struct Builder {
  const EnumerationLimits& limits;
  const SamplerOptions& opts;
  std::vector<std::string>& steps;
  Rational k = target_k();

  MultisetCertificate scaled(const MultisetCertificate& c, const BigInt& n) const {
    MultisetCertificate out = c;
    BigInt f = n / c.n_copies;
    out.n_copies = n;
    for (auto& [s, m] : out.sets) m *= f;
    return out;
  }

  BigInt common(const BigInt& a, const BigInt& b) const {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), k.get_den().get_mpz_t());
    return l;
  }

  static VertexSet lift(VertexSet s, const std::vector<Vertex>& to_parent) {
    VertexSet out = 0;
    for (Vertex v : members(s)) out |= bit(to_parent[v]);
    return out;
  }

  // Slot-by-slot union of two sequences of equal total length.
  static Slots zip(const Slots& a, const Slots& b) {
    Slots out;
    size_t i = 0, j = 0;
    BigInt ra = a.empty() ? BigInt(0) : a[0].second, rb = b.empty() ? BigInt(0) : b[0].second;
    while (i < a.size() && j < b.size()) {
      if (ra == 0) {
        if (++i < a.size()) ra = a[i].second;
        continue;
      }
      if (rb == 0) {
        if (++j < b.size()) rb = b[j].second;
        continue;
      }
      BigInt take = ra < rb ? ra : rb;
      out.emplace_back(a[i].first | b[j].first, take);
      ra -= take;
      rb -= take;
    }
    return out;
  }

  static MultisetCertificate collect(const Slots& slots, const Rational& k, const BigInt& n) {
    std::map<VertexSet, BigInt> agg;
    for (const auto& [s, c] : slots)
      if (c > 0) agg[s] += c;
    MultisetCertificate out;
    out.k = k;
    out.n_copies = n;
    out.sets.assign(agg.begin(), agg.end());
    return out;
  }

  MultisetCertificate trivial(const Graph& g) {
    std::vector<int> colour(g.order(), -1);
    VertexSet side[2] = {0, 0};
    for (Vertex s = 0; s < g.order(); ++s) {
      if (colour[s] != -1) continue;
      colour[s] = 0;
      std::vector<Vertex> stack{s};
      while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        side[colour[x]] |= bit(x);
        for (Vertex y : g.neighbours(x)) {
          if (colour[y] == -1) {
            colour[y] = 1 - colour[x];
            stack.push_back(y);
          } else if (colour[y] == colour[x]) {
            throw PreconditionError("base graph is not bipartite");
          }
        }
      }
    }
    // Each class 11 times plus 10 empty slots: 32 slots, N = 11.
    Slots slots{{side[0], BigInt(11)}, {side[1], BigInt(11)}, {0, BigInt(10)}};
    steps.push_back("trivial base on " + std::to_string(g.order()) + " vertices");
    return collect(slots, k, BigInt(11));
  }

  MultisetCertificate leaf(const Graph& g, const TwoFactor& tf) {
    auto res = exact_phase5_distribution(g, tf, limits, opts);
    int deficient = static_cast<int>(res.plan.order.size());
    auto w = distribution_to_weighting(res.law.dist, k, g.order());
    auto cert = weighting_to_multiset(w, g.order());
    Rational low = *std::min_element(res.law.marginals.begin(), res.law.marginals.end());
    steps.push_back("cubic leaf on " + std::to_string(g.order()) + " vertices, " + std::to_string(tf.num_cycles()) +
                    " cycles, " + std::to_string(deficient) + " deficient, min marginal " + to_string(low) +
                    ", N = " + cert.n_copies.get_str());
    if (cert.k != k) throw InvariantViolation("leaf certificate size differs from 32/11");
    return cert;
  }

  MultisetCertificate restrict_copy0(const MultisetCertificate& c, const ReductionNode& child) {
    Slots slots;
    for (const auto& [s, m] : c.sets) {
      VertexSet keep = 0;
      for (Vertex v : members(s))
        if (child.copy[v] == 0) keep |= bit(child.to_parent[v]);
      slots.emplace_back(keep, m);
    }
    return collect(slots, c.k, c.n_copies);
  }

  MultisetCertificate node(const ReductionNode& nd) {
    switch (nd.kind) {
      case ReductionKind::kTrivial: return trivial(nd.graph);
      case ReductionKind::kNone: return leaf(nd.graph, select_two_factor(nd.graph));
      case ReductionKind::kDegree2Double: {
        steps.push_back("doubling at every degree-2 vertex of a " + std::to_string(nd.graph.order()) +
                        "-vertex graph");
        return restrict_copy0(node(nd.children.at(0)), nd.children.at(0));
      }
      case ReductionKind::kDegree2Single: {
        steps.push_back("doubling at the single degree-2 vertex " + std::to_string(nd.suppression->v0) +
                        " with a lifted 2-factor");
        const auto& child = nd.children.at(0);
        return restrict_copy0(leaf(child.graph, suppressed_leaf_factor(nd)), child);
      }
      case ReductionKind::kComponents: {
        steps.push_back(std::to_string(nd.children.size()) + " components");
        MultisetCertificate acc;
        bool first = true;
        for (const auto& ch : nd.children) {
          auto c = node(ch);
          Slots lifted;
          for (const auto& [s, m] : c.sets) lifted.emplace_back(lift(s, ch.to_parent), m);
          c.sets = lifted;
          if (first) {
            acc = c;
            first = false;
            continue;
          }
          BigInt n = common(acc.n_copies, c.n_copies);
          acc = collect(zip(scaled(acc, n).sets, scaled(c, n).sets), k, n);
        }
        return acc;
      }
      case ReductionKind::kBridgeSplit: {
        Vertex a = nd.bridge->first, b = nd.bridge->second;
        steps.push_back("bridge (" + std::to_string(a) + "," + std::to_string(b) + ")");
        const auto& c1 = nd.children.at(0);
        const auto& c2 = nd.children.at(1);
        auto m1 = node(c1), m2 = node(c2);
        BigInt n = common(m1.n_copies, m2.n_copies);
        m1 = scaled(m1, n);
        m2 = scaled(m2, n);
        Slots s1, s2;
        for (const auto& [s, m] : m1.sets) s1.emplace_back(lift(s, c1.to_parent), m);
        for (const auto& [s, m] : m2.sets) s2.emplace_back(lift(s, c2.to_parent), m);
        // a-slots of one side meet only b-free slots of the other.
        std::stable_partition(s1.begin(), s1.end(), [&](const auto& e) { return contains(e.first, a); });
        std::stable_partition(s2.begin(), s2.end(), [&](const auto& e) { return !contains(e.first, b); });
        return collect(zip(s1, s2), k, n);
      }
    }
    throw InvariantViolation("unknown reduction kind");
  }
};

}  // namespace

SubcubicCertificate chi_f_upper_subcubic(const Graph& g, const EnumerationLimits& limits, const SamplerOptions& opts) {
  if (!g.fits_mask()) throw GuardExceeded("certificates are limited to n <= 64");
  auto tree = reduce_subcubic(g);
  SubcubicCertificate out;
  Builder b{limits, opts, out.steps};
  out.cert = b.node(tree);
  auto verdict = verify_certificate(g, out.cert);
  if (!verdict.ok) throw InvariantViolation("assembled certificate fails verification: " + verdict.problems.front());
  return out;
}

}  // namespace fracchrom
