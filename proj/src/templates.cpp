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

#include "fracchrom/templates.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace fracchrom {

VertexSet Template::heads() const {
  VertexSet s = 0;
  for (auto [t, h] : arcs) s |= bit(h);
  return s;
}

VertexSet Template::tails() const {
  VertexSet s = 0;
  for (auto [t, h] : arcs) s |= bit(t);
  return s;
}

std::optional<std::string> template_defect(const Template& t, const TwoFactor& tf) {
  for (auto [a, b] : t.arcs)
    if (a < 0 || a >= tf.order() || tf.mate(a) != b)
      return "arc " + std::to_string(a) + "->" + std::to_string(b) + " is not a matching edge";
  if (VertexSet both = t.heads() & t.tails())
    return "matching edge at " + std::to_string(members(both)[0]) + " is oriented both ways";
  if (t.star & t.xstar) return "vertex both starred and crossed-starred";
  if (t.tri & t.xtri) return "vertex both in tri and xtri";
  if ((t.star | t.xstar) & ~t.heads()) return "star mark on a vertex that is not a head";
  if ((t.tri | t.xtri) & ~t.tails()) return "tri mark on a vertex that is not a tail";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// DSL

namespace {

enum class Stmt { kArc, kStar, kXstar, kTri, kXtri };

struct ExprParser {
  const std::string& s;
  size_t i = 0;
  const TwoFactor& tf;
  std::optional<Vertex> focus;
  int line;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line, what + " in '" + s + "'"); }
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  Vertex need_focus() const {
    if (!focus) fail("vertex 'u' used without a focus");
    return *focus;
  }
  Vertex check(long v) const {
    if (v < 0 || v >= tf.order()) fail("vertex " + std::to_string(v) + " out of range");
    return static_cast<Vertex>(v);
  }
  Vertex primary() {
    skip();
    if (i >= s.size()) fail("missing vertex");
    char c = s[i];
    if (c == 'u') {
      ++i;
      return need_focus();
    }
    if (c == 'v') {
      ++i;
      return tf.mate(need_focus());
    }
    if (c == '(') {
      ++i;
      Vertex x = expr();
      skip();
      if (i >= s.size() || s[i] != ')') fail("missing ')'");
      ++i;
      return x;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
      return check(v);
    }
    fail(std::string("unexpected '") + c + "'");
  }
  Vertex expr() {
    Vertex x = primary();
    for (;;) {
      skip();
      if (i >= s.size()) return x;
      char c = s[i];
      if (c == '\'') {
        ++i;
        x = tf.mate(x);
      } else if (c == '+' || c == '-') {
        ++i;
        int k = 0;
        bool digits = false;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          k = k * 10 + (s[i++] - '0');
          digits = true;
        }
        if (!digits) k = 1;
        x = tf.navigate(x, c == '+' ? k : -k);
      } else {
        return x;
      }
    }
  }
  Vertex whole() {
    Vertex x = expr();
    skip();
    if (i != s.size()) fail("trailing characters");
    return x;
  }
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Template parse_template(const std::string& text, const TwoFactor& tf, std::optional<Vertex> focus) {
  std::vector<std::pair<int, std::string>> lines;
  {
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
      ++no;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.resize(hash);
      // Allow several statements per line separated by '/' or ';'.
      std::string part;
      for (char c : raw + ";") {
        if (c == ';' || c == '/') {
          if (!trim(part).empty()) lines.emplace_back(no, trim(part));
          part.clear();
        } else {
          part.push_back(c);
        }
      }
    }
  }
  Template t;
  for (const auto& [no, line] : lines) {
    if (line.rfind("focus", 0) != 0) continue;
    ExprParser p{line, 5, tf, std::nullopt, no};
    Vertex f = p.whole();
    if (t.focus != -1 && t.focus != f) throw ParseError(no, "conflicting focus");
    t.focus = f;
  }
  if (t.focus == -1) {
    if (!focus) throw ParseError(1, "template has no focus");
    t.focus = *focus;
  } else if (focus && *focus != t.focus) {
    throw ParseError(1, "focus line disagrees with the requested focus");
  }

  std::map<Vertex, int> mark_line;
  std::set<Edge> arcs;
  for (const auto& [no, line] : lines) {
    size_t sp = line.find_first_of(" \t");
    std::string kw = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : line.substr(sp + 1);
    if (kw == "focus") continue;
    if (kw == "arc") {
      size_t arrow = rest.find("->");
      if (arrow == std::string::npos) throw ParseError(no, "arc needs '->'");
      std::string lhs = rest.substr(0, arrow), rhs = rest.substr(arrow + 2);
      Vertex a = ExprParser{lhs, 0, tf, t.focus, no}.whole();
      Vertex b = ExprParser{rhs, 0, tf, t.focus, no}.whole();
      if (tf.mate(a) != b)
        throw ParseError(no, "arc " + std::to_string(a) + "->" + std::to_string(b) + " is not a matching edge");
      if (arcs.count({b, a}))
        throw ParseError(no, "edge " + std::to_string(a) + "-" + std::to_string(b) + " oriented both ways");
      arcs.insert({a, b});
      continue;
    }
    VertexSet* target = nullptr;
    if (kw == "star") target = &t.star;
    else if (kw == "xstar") target = &t.xstar;
    else if (kw == "tri") target = &t.tri;
    else if (kw == "xtri") target = &t.xtri;
    else throw ParseError(no, "unknown statement '" + kw + "'");
    Vertex x = ExprParser{rest, 0, tf, t.focus, no}.whole();
    *target |= bit(x);
    mark_line.emplace(x, no);
  }
  t.arcs.assign(arcs.begin(), arcs.end());
  VertexSet heads = t.heads(), tails = t.tails();
  for (auto [x, no] : mark_line) {
    bool h = contains(t.star | t.xstar, x), tl = contains(t.tri | t.xtri, x);
    if (contains(t.star, x) && contains(t.xstar, x)) throw ParseError(no, "vertex in both star and xstar");
    if (contains(t.tri, x) && contains(t.xtri, x)) throw ParseError(no, "vertex in both tri and xtri");
    if (h && !contains(heads, x)) throw ParseError(no, "star mark on non-head " + std::to_string(x));
    if (tl && !contains(tails, x)) throw ParseError(no, "tri mark on non-tail " + std::to_string(x));
  }
  return t;
}

std::string print_template(const Template& t) {
  std::ostringstream out;
  out << "focus " << t.focus << '\n';
  for (auto [a, b] : t.arcs) out << "arc " << a << "->" << b << '\n';
  auto marks = [&](const char* kw, VertexSet s) {
    for (Vertex x : members(s)) out << kw << ' ' << x << '\n';
  };
  marks("star", t.star);
  marks("xstar", t.xstar);
  marks("tri", t.tri);
  marks("xtri", t.xtri);
  return out.str();
}

Template merge_templates(const std::vector<Template>& parts) {
  Template t;
  std::set<Edge> arcs;
  for (const auto& p : parts) {
    if (t.focus == -1) t.focus = p.focus;
    arcs.insert(p.arcs.begin(), p.arcs.end());
    t.star |= p.star;
    t.xstar |= p.xstar;
    t.tri |= p.tri;
    t.xtri |= p.xtri;
  }
  t.arcs.assign(arcs.begin(), arcs.end());
  return t;
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

const std::map<std::string, std::string>& base_texts() {
  static const std::map<std::string, std::string> texts = {
      {"E0", "arc v->u; arc u- -> (u-)'; arc u+ -> (u+)'"},
      {"E-", "arc v->u; arc (u-)' -> u-; arc u+ -> (u+)'; star u"},
      {"E+", "arc v->u; arc u- -> (u-)'; arc (u+)' -> u+; star u"},
      {"E+-", "arc v->u; arc (u-)' -> u-; arc (u+)' -> u+; star u"},
      {"A", "arc u->v; arc (u-)' -> u-; arc (u-2)' -> u-2; star u-2"},
      {"B", "arc u->v; arc u- -> (u-)'; tri u"},
      {"C1", "arc u->v; arc u- -> (u-)'; xtri u; star (u-)'"},
      {"C2", "arc u->v; arc u- -> (u-)'; arc (u-2)' -> u-2; xtri u; xstar (u-)'; star u-2"},
      {"C3", "arc u->v; arc u- -> (u-)'; arc (u-2)' -> u-2; arc u-3 -> (u-3)'; xtri u; xstar (u-)'; xstar u-2"},
      {"D-", "arc u->v; arc (v-)' -> v-; arc v+ -> (v+)'; star v-"},
      {"D0", "arc u->v; arc (v-)' -> v-; arc (v+)' -> v+; xstar v"},
      {"D+", "arc u->v; arc v- -> (v-)'; arc (v+)' -> v+; star v+"},
  };
  return texts;
}

// Exchange '+' and '-' offsets, leaving arrows alone.
std::string mirror(const std::string& text) {
  std::string out = text;
  for (size_t i = 0; i < out.size(); ++i) {
    if (out[i] == '-' && i + 1 < out.size() && out[i + 1] == '>') {
      ++i;
      continue;
    }
    if (out[i] == '+') out[i] = '-';
    else if (out[i] == '-') out[i] = '+';
  }
  return out;
}

std::string normalise(std::string name) {
  auto replace = [&](const std::string& from, const std::string& to) {
    for (size_t p; (p = name.find(from)) != std::string::npos;) name.replace(p, from.size(), to);
  };
  replace("\xE2\x88\x92", "-");  // unicode minus
  replace("\xC2\xB1", "+-");     // plus-minus sign
  if (name == "Epm") name = "E+-";
  return name;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"E0", "E-",  "E+",  "E+-", "A",   "B",  "C1", "C2", "C3",
                                                 "A*", "B*", "C1*", "C2*", "C3*", "D-", "D0", "D+"};
  return names;
}

std::string builtin_text(const std::string& raw) {
  std::string name = normalise(raw);
  bool starred = !name.empty() && name.back() == '*';
  std::string base = starred ? name.substr(0, name.size() - 1) : name;
  auto it = base_texts().find(base);
  if (it == base_texts().end() || (starred && (base[0] == 'E' || base[0] == 'D')))
    throw PreconditionError("unknown template '" + raw + "'");
  return starred ? mirror(it->second) : it->second;
}

NamedTemplate try_builtin(const std::string& name, const TwoFactor& tf, Vertex u) {
  NamedTemplate nt;
  nt.name = normalise(name);
  std::string text = builtin_text(name);
  try {
    nt.tmpl = parse_template(text, tf, u);
  } catch (const ParseError& e) {
    nt.defect = e.what();
  }
  return nt;
}

Template builtin(const std::string& name, const TwoFactor& tf, Vertex u) {
  auto nt = try_builtin(name, tf, u);
  if (!nt.tmpl) throw PreconditionError("template " + nt.name + " is invalid at " + std::to_string(u) + ": " + nt.defect);
  return *nt.tmpl;
}

NamedTemplate compose_pqr(const std::string& p, const std::string& q, const std::string& r, const TwoFactor& tf,
                          Vertex u) {
  static const std::set<std::string> sides = {"A", "B", "C1", "C2", "C3"}, uppers = {"D-", "D0", "D+"};
  std::string rn = normalise(r);
  if (!sides.count(p) || !sides.count(q) || !uppers.count(rn))
    throw PreconditionError("bad PQR components " + p + "," + q + "," + r);
  NamedTemplate nt;
  nt.name = p + q + rn;
  std::string text = builtin_text(p) + "\n" + builtin_text(q + "*") + "\n" + builtin_text(rn);
  try {
    nt.tmpl = parse_template(text, tf, u);
  } catch (const ParseError& e) {
    nt.defect = e.what();
  }
  return nt;
}

std::vector<NamedTemplate> sigma_library(const TwoFactor& tf, Vertex u) {
  std::vector<NamedTemplate> out;
  for (const char* p : {"A", "B", "C1", "C2", "C3"})
    for (const char* q : {"A", "B", "C1", "C2", "C3"})
      for (const char* r : {"D-", "D0", "D+"}) out.push_back(compose_pqr(p, q, r, tf, u));
  return out;
}

// ---------------------------------------------------------------------------
// Sensitive pairs and the event lower bound

std::string to_string(PairKind k) {
  switch (k) {
    case PairKind::kLinearA: return "linear-a";
    case PairKind::kLinearB: return "linear-b";
    case PairKind::kCircular: return "circular";
  }
  return "?";
}

std::vector<SensitivePair> sensitive_pairs(const Template& t, const TwoFactor& tf) {
  std::vector<SensitivePair> out;
  VertexSet heads = t.heads(), tails = t.tails(), marked = t.marked();
  auto cands = members(t.star | t.xstar);
  for (Vertex x : cands)
    for (Vertex y : cands) {
      if (!tf.same_cycle(x, y)) continue;
      int c = tf.cycle_of(x);
      if (x == y) {
        if (!contains(t.star, x) || tf.cycle_length(c) % 2 == 0) continue;
        VertexSet w = mask_of(tf.cycle(c));
        if ((w & tails) || (w & marked & ~bit(x))) continue;
        out.push_back({x, x, PairKind::kCircular, popcount(w & ~heads)});
        continue;
      }
      auto path = tf.subpath(x, y);
      VertexSet pm = mask_of(path);
      VertexSet inner = pm & ~bit(x) & ~bit(y);
      if ((inner & marked) || (pm & tails)) continue;
      int len = static_cast<int>(path.size()) - 1;
      bool same = contains(t.star, x) == contains(t.star, y);
      PairKind kind;
      if (same && len % 2 == 1) kind = PairKind::kLinearA;
      else if (!same && len % 2 == 0) kind = PairKind::kLinearB;
      else continue;
      out.push_back({x, y, kind, popcount(pm & ~heads)});
    }
  return out;
}

namespace {

Rational pow2_inv(int k) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return Rational(BigInt(1), p);
}

}  // namespace

Rational q_upper(const Template& t, const TwoFactor& tf) {
  Vertex u = t.focus;
  int z = tf.cycle_of(u);
  VertexSet zm = mask_of(tf.cycle(z));
  if (!contains(t.tri, u) || (zm & t.heads()) || tf.cycle_length(z) % 2 == 0) return Rational(0);
  return pow2_inv(popcount(zm & ~t.tails()));
}

Rational q_exact(const Template& t, const TwoFactor& tf, const SituationTable& table) {
  Vertex u = t.focus;
  int z = tf.cycle_of(u);
  if (!contains(t.tri, u) || tf.cycle_length(z) % 2 == 0) return Rational(0);
  VertexSet zm = mask_of(tf.cycle(z));
  Rational weak(0), hit(0);
  for (const auto& r : table.records) {
    if (!conforms(r, t, true)) continue;
    weak += r.prob;
    if ((r.feasible & zm) == zm) hit += r.prob;
  }
  if (weak == 0) return Rational(0);
  return hit / weak;
}

bool is_admissible(const Template& t, const SituationTable& table) {
  VertexSet third = t.tri | t.xtri;
  if (third & ~bit(t.focus)) return false;
  if (!third) return true;
  for (const auto& r : table.records)
    if (conforms(r, t, true) && !contains(r.feasible, t.focus)) return false;
  return true;
}

Rational lemma4_lower_bound(const Template& t, const std::vector<SensitivePair>& pairs, const Rational& q) {
  Rational s(1);
  for (const auto& p : pairs) {
    if (p.kind == PairKind::kCircular) s -= pow2_inv(p.freeness) / 5;
    else s -= pow2_inv(p.freeness);
  }
  s -= q / 5;
  if (s < 0) return Rational(0);
  return s * pow2_inv(t.weight());
}

}  // namespace fracchrom
