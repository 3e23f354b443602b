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

#ifndef FRACCHROM_COMMON_HPP
#define FRACCHROM_COMMON_HPP

#include <gmpxx.h>

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracchrom {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Vertex subsets of graphs with at most 64 vertices.
using VertexSet = std::uint64_t;
inline constexpr int kMaxMaskVertices = 64;

using Rational = mpq_class;
using BigInt = mpz_class;

inline VertexSet bit(Vertex v) { return VertexSet{1} << v; }
inline bool contains(VertexSet s, Vertex v) { return (s >> v) & 1U; }
inline int popcount(VertexSet s) { return std::popcount(s); }

std::vector<Vertex> members(VertexSet s);
VertexSet mask_of(const std::vector<Vertex>& vs);

// "num/den" (or "num" when den == 1).
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);
Rational make_rational(long num, long den);
double to_double(const Rational& q);

// The bound 32/11 and its reciprocal 88/256 = 11/32.
Rational target_k();
Rational target_marginal();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Input outside the class an operation accepts (exit code 2 in the CLI).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Exact engine refused to run because a size bound was exceeded (exit 3).
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// A property that the construction guarantees failed to hold (exit 4).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace fracchrom

#endif  // FRACCHROM_COMMON_HPP
