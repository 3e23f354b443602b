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

#ifndef FRACCHROM_TEMPLATES_HPP
#define FRACCHROM_TEMPLATES_HPP

#include <optional>
#include <string>
#include <vector>

#include "fracchrom/graph.hpp"
#include "fracchrom/sampler.hpp"
#include "fracchrom/two_factor.hpp"

namespace fracchrom {

// Partial prescription of a situation around a focus vertex: oriented
// matching edges, vertices required in / kept out of the Phase-1 selection
// (star / xstar) and of the Phase-3 selection (tri / xtri).
struct Template {
  Vertex focus = -1;
  std::vector<Edge> arcs;  // (tail, head), sorted, no repeats
  VertexSet star = 0;
  VertexSet xstar = 0;
  VertexSet tri = 0;
  VertexSet xtri = 0;

  VertexSet heads() const;
  VertexSet tails() const;
  VertexSet marked() const { return star | xstar | tri | xtri; }
  int weight() const { return static_cast<int>(arcs.size()) + popcount(marked()); }
  bool operator==(const Template&) const = default;
};

// Reason the template is not legitimate in (G, F), or nullopt.
std::optional<std::string> template_defect(const Template& t, const TwoFactor& tf);

// Line DSL: `focus N`, `arc X->Y`, `star X`, `xstar X`, `tri X`, `xtri X`.
// Vertex expressions: an id, `u` (the focus), `v` (its mate), followed by
// any chain of cycle offsets (`+`, `-2`, ...) and mate marks (`'`), with
// parentheses for grouping, e.g. `(u-2)'`. `#` starts a comment.
// Throws ParseError for syntax and for templates that are not legitimate.
Template parse_template(const std::string& text, const TwoFactor& tf, std::optional<Vertex> focus = std::nullopt);
// Canonical text with numeric ids; parse(print(t)) == t.
std::string print_template(const Template& t);

// Union of the constituents; the result may be illegitimate.
Template merge_templates(const std::vector<Template>& parts);

// Builtin names: E0 E- E+ E+- A B C1 C2 C3 A* B* C1* C2* C3* D- D0 D+.
const std::vector<std::string>& builtin_names();
// DSL text of a builtin, relative to `u` and `v`.
std::string builtin_text(const std::string& name);

struct NamedTemplate {
  std::string name;
  std::optional<Template> tmpl;  // empty when invalid
  std::string defect;
  bool valid() const { return tmpl.has_value(); }
};

NamedTemplate try_builtin(const std::string& name, const TwoFactor& tf, Vertex u);
// Throws PreconditionError for unknown names or invalid instantiations.
Template builtin(const std::string& name, const TwoFactor& tf, Vertex u);

// PQR with P, Q in {A, B, C1, C2, C3} (Q mirrored) and R in {D-, D0, D+}.
NamedTemplate compose_pqr(const std::string& p, const std::string& q, const std::string& r, const TwoFactor& tf,
                          Vertex u);
// All 75 combinations, valid or not, named like "ABD0" or "C1C3D+".
std::vector<NamedTemplate> sigma_library(const TwoFactor& tf, Vertex u);

enum class PairKind { kLinearA, kLinearB, kCircular };
std::string to_string(PairKind k);

struct SensitivePair {
  Vertex x = -1;
  Vertex y = -1;
  PairKind kind = PairKind::kLinearA;
  int freeness = 0;  // non-head vertices on the path (on the cycle if circular)
};

std::vector<SensitivePair> sensitive_pairs(const Template& t, const TwoFactor& tf);

// 0 when the focus is not in tri, or its cycle is even or holds a head;
// otherwise 1/2^t with t the number of non-tails on the focus cycle.
Rational q_upper(const Template& t, const TwoFactor& tf);
// Probability that the whole focus cycle is feasible given weak conformance
// (0 when the focus is not in tri or its cycle is even).
Rational q_exact(const Template& t, const TwoFactor& tf, const SituationTable& table);

// tri/xtri lie within {focus} and, when nonempty, the focus is feasible in
// every weakly conforming situation.
bool is_admissible(const Template& t, const SituationTable& table);

// max(0, (1 - sum 2^-x - sum 1/(5*2^y) - q/5) / 2^weight).
Rational lemma4_lower_bound(const Template& t, const std::vector<SensitivePair>& pairs, const Rational& q);

}  // namespace fracchrom

#endif  // FRACCHROM_TEMPLATES_HPP
