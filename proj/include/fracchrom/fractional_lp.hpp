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

#ifndef FRACCHROM_FRACTIONAL_LP_HPP
#define FRACCHROM_FRACTIONAL_LP_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fracchrom/graph.hpp"
#include "fracchrom/sampler.hpp"

namespace fracchrom {

// Nonnegative weights on independent sets.
struct FractionalColouring {
  std::map<VertexSet, Rational> weights;

  Rational size() const;
  Rational vertex_weight(Vertex v) const;
  bool covers(int n) const;  // every vertex weight >= 1
};

// Lists of independent sets (repeats given by multiplicities) covering each
// vertex exactly N times; the total multiplicity is k*N.
struct MultisetCertificate {
  Rational k;
  BigInt n_copies;  // N
  std::vector<std::pair<VertexSet, BigInt>> sets;

  BigInt total() const;
};

// All maximal independent sets, sorted by mask. GuardExceeded above max_n.
std::vector<VertexSet> maximal_independent_sets(const Graph& g, int max_n = 40);

struct LpResult {
  Rational value;
  FractionalColouring primal;
  std::vector<Rational> dual;  // per-vertex packing weights
  int pivots = 0;
  int columns = 0;  // number of maximal independent sets
};

// Exact optimum of min sum x_I subject to each vertex covered with weight 1,
// solved as the dual packing problem by rational simplex with Bland's rule.
// The primal, the dual and complementary slackness are all re-checked.
LpResult chi_f_exact(const Graph& g, int max_n = 40);

// w = k * p; PreconditionError names a vertex whose marginal is below 1/k.
FractionalColouring distribution_to_weighting(const Distribution& dist, const Rational& k, int n);

// Shrink sets until every vertex has weight exactly 1, then clear
// denominators.
MultisetCertificate weighting_to_multiset(const FractionalColouring& w, int n);

// Uniform law over the slots of the certificate.
Distribution multiset_to_distribution(const MultisetCertificate& cert);

struct CertificateVerdict {
  bool ok = true;
  std::vector<std::string> problems;
};

// Recount from scratch: independence of each set, exactly N copies of
// each vertex, and total = k*N.
CertificateVerdict verify_certificate(const Graph& g, const MultisetCertificate& cert);

struct SubcubicCertificate {
  MultisetCertificate cert;
  std::vector<std::string> steps;  // one line per reduction node visited
};

// Certificate with k = 32/11 for a triangle-free subcubic graph, built from
// exact Phase-5 laws at the cubic leaves of the reduction tree.
SubcubicCertificate chi_f_upper_subcubic(const Graph& g, const EnumerationLimits& limits = {},
                                         const SamplerOptions& opts = {});

}  // namespace fracchrom

#endif  // FRACCHROM_FRACTIONAL_LP_HPP
