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

#ifndef FRACCHROM_CORPUS_HPP
#define FRACCHROM_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fracchrom/graph.hpp"
#include "fracchrom/sampler.hpp"
#include "fracchrom/two_factor.hpp"

namespace fracchrom {

// Isomorphism-invariant fingerprint; equal graphs up to relabelling hash
// equally.
std::uint64_t invariant_hash(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);

// All connected cubic graphs on n vertices up to isomorphism (n even,
// 4 <= n <= 16), grown from K4.
std::vector<Graph> connected_cubic_graphs(int n);
std::vector<Graph> cubic_graphs(int n, bool triangle_free, bool bridgeless);

struct CorpusGraph {
  std::string name;
  Graph graph;
};

// Every regular file of dir, sorted by name. Edge-list files hold one
// graph; graph6 files hold one graph per line.
std::vector<CorpusGraph> load_corpus_dir(const std::filesystem::path& dir);

struct CorpusRow {
  std::string name;
  int order = 0;
  StructureReport report;
  std::optional<Rational> chi_f;
  std::optional<Rational> min_marginal;
  std::optional<int> deficient;
  std::string note;  // why a column was skipped
};

CorpusRow summarize(const CorpusGraph& entry, const EnumerationLimits& limits = {}, const SamplerOptions& opts = {});

struct DeficientHit {
  Graph graph;
  TwoFactor factor;
  std::vector<Vertex> deficient;
};

// Triangle-free bridgeless cubic graphs with n <= max_n whose selected
// 2-factor has deficient vertices.
std::vector<DeficientHit> search_deficient(int max_n);

}  // namespace fracchrom

#endif  // FRACCHROM_CORPUS_HPP
