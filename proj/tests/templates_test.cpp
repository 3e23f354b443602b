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

#include "doctest.h"
#include "fixtures.hpp"
#include "fracchrom/sampler.hpp"
#include "fracchrom/templates.hpp"

using namespace fracchrom;

namespace {

struct Setup {
  Graph g;
  TwoFactor tf;
  SituationTable table;
};

Setup petersen_setup() {
  Graph g = testing::petersen_graph();
  TwoFactor tf = select_two_factor(g);
  return {g, tf, enumerate_situations(g, tf)};
}

}  // namespace

TEST_CASE("builtins instantiate and round-trip") {
  auto s = petersen_setup();
  CHECK(builtin_names().size() == 17);
  for (Vertex u = 0; u < 10; ++u)
    for (const auto& name : builtin_names()) {
      auto nt = try_builtin(name, s.tf, u);
      if (!nt.valid()) continue;
      const Template& t = *nt.tmpl;
      CHECK(t.focus == u);
      CHECK(!template_defect(t, s.tf));
      CHECK(parse_template(print_template(t), s.tf) == t);
    }
  Vertex u = 0, v = s.tf.mate(0);
  Template e0 = builtin("E0", s.tf, u);
  CHECK(e0.arcs.size() == 3);
  CHECK(e0.marked() == 0);
  CHECK(contains(e0.heads(), u));
  CHECK(contains(e0.tails(), v));
  CHECK(contains(e0.tails(), s.tf.navigate(u, 1)));
  CHECK(contains(e0.heads(), s.tf.mate(s.tf.navigate(u, -1))));

  Template b = builtin("B", s.tf, u);
  CHECK(contains(b.heads(), v));
  CHECK(contains(b.tails(), u));
  CHECK(b.tri == bit(u));

  Template bs = builtin("B*", s.tf, u);
  CHECK(contains(bs.tails(), s.tf.navigate(u, 1)));
  CHECK_THROWS_AS(builtin("nope", s.tf, u), PreconditionError);
}

TEST_CASE("DSL errors") {
  auto s = petersen_setup();
  std::string on_cycle = "focus 0\narc 0->" + std::to_string(s.tf.navigate(0, 1));
  CHECK_THROWS_AS(parse_template(on_cycle, s.tf), ParseError);
  Vertex m = s.tf.mate(0);
  std::string a = "focus 0\narc 0->" + std::to_string(m) + "\n";
  CHECK_NOTHROW(parse_template(a, s.tf));
  CHECK_THROWS_AS(parse_template(a + "arc " + std::to_string(m) + "->0", s.tf), ParseError);
  CHECK_THROWS_AS(parse_template(a + "star 0", s.tf), ParseError);  // 0 is a tail
  CHECK_THROWS_AS(parse_template(a + "tri " + std::to_string(m), s.tf), ParseError);
  CHECK_THROWS_AS(parse_template(a + "star " + std::to_string(m) + "\nxstar " + std::to_string(m), s.tf),
                  ParseError);
  CHECK_THROWS_AS(parse_template(a + "tri 0\nxtri 0", s.tf), ParseError);
  CHECK_THROWS_AS(parse_template("arc 0->" + std::to_string(m), s.tf), ParseError);  // no focus
  CHECK_THROWS_AS(parse_template("focus 0\nfrob 1", s.tf), ParseError);
  try {
    parse_template(a + "\n\nstar 0", s.tf);
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }
  // The expression language: u, v, offsets, mates, comments and separators.
  Template t = parse_template("arc v->u; arc u- -> (u-)' # comment\n", s.tf, 0);
  CHECK(t.arcs.size() == 2);
  CHECK(contains(t.heads(), s.tf.mate(s.tf.navigate(0, -1))));
}

TEST_CASE("sigma library") {
  auto s = petersen_setup();
  auto lib = sigma_library(s.tf, 0);
  CHECK(lib.size() == 75);
  int valid = 0;
  for (const auto& nt : lib) valid += nt.valid();
  CHECK(valid > 0);
  // Composition is the union of the parts.
  auto abd = compose_pqr("A", "B", "D0", s.tf, 0);
  auto pa = try_builtin("A", s.tf, 0), pb = try_builtin("B*", s.tf, 0), pd = try_builtin("D0", s.tf, 0);
  if (abd.valid() && pa.valid() && pb.valid() && pd.valid())
    CHECK(*abd.tmpl == merge_templates({*pa.tmpl, *pb.tmpl, *pd.tmpl}));
}

TEST_CASE("conformance probability of arc-only templates is 2^-arcs") {
  auto s = petersen_setup();
  for (Vertex u = 0; u < 10; ++u) {
    Template e0 = builtin("E0", s.tf, u);
    CHECK(event_probability(e0, s.table, true) == Rational(1, 8));
    Template arcs_only = e0;
    arcs_only.arcs.pop_back();
    CHECK(event_probability(arcs_only, s.table, true) == Rational(1, 4));
  }
}

TEST_CASE("sensitive pairs") {
  auto s = petersen_setup();
  Vertex u = 0;
  // u a starred head alone on its odd cycle: one circular pair.
  Template t = parse_template("arc v->u; star u", s.tf, u);
  auto pairs = sensitive_pairs(t, s.tf);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].kind == PairKind::kCircular);
  CHECK(pairs[0].x == u);
  CHECK(pairs[0].freeness == 4);

  // A tail on the cycle kills it.
  Template t2 = parse_template("arc v->u; star u; arc u+ -> (u+)'", s.tf, u);
  CHECK(sensitive_pairs(t2, s.tf).empty());

  // Two starred heads at distance 2 on a 5-cycle, no tails: the short path is
  // even with the same class (no pair), the long one is odd (type a).
  Vertex w = s.tf.navigate(u, 2);
  std::string txt = "arc v->u; arc (u+2)' -> u+2; star u; star u+2";
  Template t3 = parse_template(txt, s.tf, u);
  auto p3 = sensitive_pairs(t3, s.tf);
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].x == w);
  CHECK(p3[0].y == u);
  CHECK(p3[0].kind == PairKind::kLinearA);
  CHECK(p3[0].freeness == 2);

  // Different classes at even distance: type b.
  Template t4 = parse_template("arc v->u; arc (u+2)' -> u+2; star u; xstar u+2", s.tf, u);
  auto p4 = sensitive_pairs(t4, s.tf);
  REQUIRE(p4.size() == 1);
  CHECK(p4[0].kind == PairKind::kLinearB);
  CHECK(p4[0].x == u);
  CHECK(p4[0].freeness == 1);
}

TEST_CASE("q and the lower bound") {
  auto s = petersen_setup();
  Template b = builtin("B", s.tf, 0);
  // No head on the focus cycle, two tails on it: 1/2^3.
  CHECK(q_upper(b, s.tf) == Rational(1, 8));
  CHECK(q_upper(builtin("E0", s.tf, 0), s.tf) == 0);
  for (Vertex u = 0; u < 10; ++u)
    for (const auto& name : builtin_names()) {
      auto nt = try_builtin(name, s.tf, u);
      if (!nt.valid() || !is_admissible(*nt.tmpl, s.table)) continue;
      Rational q = q_exact(*nt.tmpl, s.tf, s.table);
      CHECK(q >= 0);
      CHECK(q <= q_upper(*nt.tmpl, s.tf));
    }

  Template t;
  t.focus = 0;
  t.arcs = {{s.tf.mate(0), 0}};
  std::vector<SensitivePair> pairs{{0, 1, PairKind::kLinearA, 2}, {0, 0, PairKind::kCircular, 3}};
  // (1 - 1/4 - 1/40 - (1/8)/5) / 2 = 0.35
  CHECK(lemma4_lower_bound(t, pairs, Rational(1, 8)) == Rational(7, 20));
  std::vector<SensitivePair> many(5, {0, 1, PairKind::kLinearA, 1});
  CHECK(lemma4_lower_bound(t, many, 0) == 0);
}
