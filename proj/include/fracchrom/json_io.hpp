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

#ifndef FRACCHROM_JSON_IO_HPP
#define FRACCHROM_JSON_IO_HPP

#include <string>
#include <vector>

#include "fracchrom/augment.hpp"
#include "fracchrom/corpus.hpp"
#include "fracchrom/fractional_lp.hpp"
#include "fracchrom/graph.hpp"
#include "fracchrom/sampler.hpp"
#include "fracchrom/templates.hpp"
#include "fracchrom/two_factor.hpp"
#include "json.hpp"

namespace fracchrom {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& q);  // "num/den", or "num" when integral
Rational rational_from_json(const Json& j);
Json set_json(VertexSet s);  // sorted vertex array
VertexSet set_from_json(const Json& j);

Json to_json(const StructureReport& r);
Json to_json(const TwoFactor& tf);
// Reads "cycles" (orientation kept) and, if present, checks "matching".
TwoFactor two_factor_from_json(const Graph& g, const Json& j);

Json distribution_json(const Distribution& dist);
Json marginals_json(const std::vector<Rational>& marginals);
Json to_json(const MonteCarloReport& r);
Json to_json(const Template& t);
Json to_json(const std::vector<SensitivePair>& pairs);
Json to_json(const std::vector<DeficiencyRecord>& report);
Json to_json(const Phase5Plan& plan);
Json to_json(const LpResult& lp);
Json to_json(const CorpusRow& row);

// {"k": "32/11", "N": ..., "sets": [[...], ...], "multiplicity": [...]}.
// N and the multiplicities are integers, or decimal strings past 64 bits.
// Without "multiplicity" every listed set counts once.
Json to_json(const MultisetCertificate& cert);
MultisetCertificate certificate_from_json(const Json& j);

}  // namespace fracchrom

#endif  // FRACCHROM_JSON_IO_HPP
