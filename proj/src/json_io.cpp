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

#include "fracchrom/json_io.hpp"

#include <algorithm>

namespace fracchrom {

namespace {

Json big_json(const BigInt& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    BigInt x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw ParseError(0, "bad integer '" + j.get<std::string>() + "'");
    return x;
  }
  throw ParseError(0, "expected an integer");
}

Json edge_json(const Edge& e) { return Json::array({e.first, e.second}); }

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>())));
  throw ParseError(0, "expected a rational string");
}

Json set_json(VertexSet s) {
  Json a = Json::array();
  for (Vertex v : members(s)) a.push_back(v);
  return a;
}

VertexSet set_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError(0, "expected a vertex array");
  VertexSet s = 0;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError(0, "vertex ids must be integers");
    long long x = v.get<long long>();
    if (x < 0 || x >= kMaxMaskVertices) throw ParseError(0, "vertex id out of range");
    s |= bit(static_cast<Vertex>(x));
  }
  return s;
}

Json to_json(const StructureReport& r) {
  Json j;
  j["cubic"] = r.is_cubic;
  j["subcubic"] = r.is_subcubic;
  j["triangle_free"] = r.is_triangle_free;
  j["connected"] = r.is_connected;
  j["bridgeless"] = r.is_bridgeless;
  j["triangle"] = r.triangle_witness ? Json(std::vector<Vertex>(r.triangle_witness->begin(), r.triangle_witness->end()))
                                     : Json(nullptr);
  j["degree_witness"] = r.degree_witness ? Json(*r.degree_witness) : Json(nullptr);
  j["disconnected_witness"] = r.disconnected_witness ? Json(*r.disconnected_witness) : Json(nullptr);
  Json br = Json::array();
  for (const auto& e : r.bridges) br.push_back(edge_json(e));
  j["bridges"] = br;
  j["blocks"] = r.blocks;
  return j;
}

Json to_json(const TwoFactor& tf) {
  Json j;
  j["cycles"] = tf.cycles();
  Json m = Json::array();
  for (const auto& e : tf.matching()) m.push_back(edge_json(e));
  j["matching"] = m;
  return j;
}

TwoFactor two_factor_from_json(const Graph& g, const Json& j) {
  if (!j.is_object() || !j.contains("cycles")) throw ParseError(0, "two-factor JSON needs a \"cycles\" array");
  std::vector<std::vector<Vertex>> cycles;
  try {
    cycles = j.at("cycles").get<std::vector<std::vector<Vertex>>>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(0, "\"cycles\" must be an array of vertex arrays");
  }
  TwoFactor tf = TwoFactor::from_cycles(g, cycles);
  if (j.contains("matching")) {
    std::vector<Edge> m;
    for (const auto& e : j.at("matching")) {
      if (!e.is_array() || e.size() != 2) throw ParseError(0, "matching entries must be vertex pairs");
      m.push_back(canonical(e[0].get<Vertex>(), e[1].get<Vertex>()));
    }
    std::sort(m.begin(), m.end());
    if (m != tf.matching()) throw PreconditionError("\"matching\" disagrees with the cycles");
  }
  return tf;
}

Json distribution_json(const Distribution& dist) {
  Json a = Json::array();
  for (const auto& [s, p] : dist) a.push_back({{"set", set_json(s)}, {"p", rational_json(p)}});
  return a;
}

Json marginals_json(const std::vector<Rational>& marginals) {
  Json a = Json::array();
  for (size_t v = 0; v < marginals.size(); ++v)
    a.push_back({{"vertex", v}, {"p", rational_json(marginals[v])}, {"approx", to_double(marginals[v])}});
  return a;
}

Json to_json(const MonteCarloReport& r) {
  Json j;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["violations"] = r.violations;
  Json rows = Json::array();
  for (size_t v = 0; v < r.counts.size(); ++v)
    rows.push_back({{"vertex", v},
                    {"count", r.counts[v]},
                    {"frequency", r.frequency(static_cast<Vertex>(v))},
                    {"std_error", r.std_error(static_cast<Vertex>(v))}});
  j["vertices"] = rows;
  return j;
}

Json to_json(const Template& t) {
  Json j;
  j["focus"] = t.focus;
  Json arcs = Json::array();
  for (const auto& a : t.arcs) arcs.push_back(edge_json(a));
  j["arcs"] = arcs;
  j["star"] = set_json(t.star);
  j["xstar"] = set_json(t.xstar);
  j["tri"] = set_json(t.tri);
  j["xtri"] = set_json(t.xtri);
  j["weight"] = t.weight();
  return j;
}

Json to_json(const std::vector<SensitivePair>& pairs) {
  Json a = Json::array();
  for (const auto& p : pairs)
    a.push_back({{"x", p.x}, {"y", p.y}, {"kind", to_string(p.kind)}, {"freeness", p.freeness}});
  return a;
}

Json to_json(const std::vector<DeficiencyRecord>& report) {
  Json a = Json::array();
  for (const auto& r : report) {
    Json row;
    row["vertex"] = r.vertex;
    row["type"] = to_string(r.type);
    row["epsilon"] = rational_json(r.epsilon);
    row["sponsor"] = r.sponsor ? Json(*r.sponsor) : Json(nullptr);
    a.push_back(row);
  }
  return a;
}

Json to_json(const Phase5Plan& plan) {
  Json rows = Json::array();
  for (size_t i = 0; i < plan.order.size(); ++i) {
    Json entries = Json::array();
    for (size_t s = 0; s < plan.sets.size(); ++s)
      if (plan.p[i][s] != 0)
        entries.push_back({{"set", set_json(plan.sets[s])},
                           {"p", rational_json(plan.p[i][s])},
                           {"bias", rational_json(plan.bias[i][s])}});
    rows.push_back({{"vertex", plan.order[i]},
                    {"sponsor", plan.sponsors[i]},
                    {"deficit", rational_json(plan.deficit[i])},
                    {"receptivity", rational_json(plan.receptivities[i])},
                    {"eta", rational_json(plan.eta[i])},
                    {"earlier", set_json(plan.earlier[i])},
                    {"entries", entries}});
  }
  return rows;
}

Json to_json(const LpResult& lp) {
  Json j;
  j["chi_f"] = rational_json(lp.value);
  j["approx"] = to_double(lp.value);
  j["columns"] = lp.columns;
  j["pivots"] = lp.pivots;
  Json primal = Json::array();
  for (const auto& [s, w] : lp.primal.weights) primal.push_back({{"set", set_json(s)}, {"weight", rational_json(w)}});
  j["colouring"] = primal;
  Json dual = Json::array();
  for (const auto& y : lp.dual) dual.push_back(rational_json(y));
  j["packing"] = dual;
  return j;
}

Json to_json(const CorpusRow& row) {
  Json j;
  j["name"] = row.name;
  j["n"] = row.order;
  const auto& r = row.report;
  std::string cls = !r.is_subcubic ? "other"
                    : !r.is_cubic  ? "subcubic"
                                   : "cubic";
  if (r.is_subcubic) {
    if (r.is_triangle_free) cls += ",triangle-free";
    if (r.is_bridgeless) cls += ",bridgeless";
    if (!r.is_connected) cls += ",disconnected";
  }
  j["class"] = cls;
  j["chi_f"] = row.chi_f ? rational_json(*row.chi_f) : Json(nullptr);
  j["min_marginal"] = row.min_marginal ? rational_json(*row.min_marginal) : Json(nullptr);
  j["deficient"] = row.deficient ? Json(*row.deficient) : Json(nullptr);
  if (!row.note.empty()) j["note"] = row.note;
  return j;
}

Json to_json(const MultisetCertificate& cert) {
  Json j;
  j["k"] = rational_json(cert.k);
  j["N"] = big_json(cert.n_copies);
  Json sets = Json::array(), mult = Json::array();
  for (const auto& [s, c] : cert.sets) {
    sets.push_back(set_json(s));
    mult.push_back(big_json(c));
  }
  j["sets"] = sets;
  j["multiplicity"] = mult;
  return j;
}

MultisetCertificate certificate_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError(0, "certificate must be a JSON object");
  for (const char* key : {"k", "N", "sets"})
    if (!j.contains(key)) throw ParseError(0, std::string("certificate lacks \"") + key + "\"");
  MultisetCertificate cert;
  cert.k = rational_from_json(j.at("k"));
  cert.n_copies = big_from_json(j.at("N"));
  const Json& sets = j.at("sets");
  if (!sets.is_array()) throw ParseError(0, "\"sets\" must be an array");
  const Json* mult = j.contains("multiplicity") ? &j.at("multiplicity") : nullptr;
  if (mult && (!mult->is_array() || mult->size() != sets.size()))
    throw ParseError(0, "\"multiplicity\" must match \"sets\" in length");
  for (size_t i = 0; i < sets.size(); ++i)
    cert.sets.emplace_back(set_from_json(sets[i]), mult ? big_from_json((*mult)[i]) : BigInt(1));
  return cert;
}

}  // namespace fracchrom
