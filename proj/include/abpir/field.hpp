// Copyright 2026 The abpir authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>

#include "abpir/errors.hpp"

namespace abpir {

/// Additive group of the symbol field. Queries only ever add and subtract
/// symbols, so a prime modulus or a XOR width is all the structure needed;
/// no multiplication tables.
struct FieldSpec {
  enum class Kind { kPrime, kBinary };
  Kind kind = Kind::kBinary;
  uint64_t modulus = 2;  // prime p when kPrime; unused when kBinary
  unsigned bits = 1;     // k when kBinary (q = 2^k); unused when kPrime

  /// Accepts a prime ("2", "257"), a power of two ("256"), or the explicit
  /// form "2^k" for k in [1, 64].
  static FieldSpec parse(const std::string& text);

  static FieldSpec prime(uint64_t p);
  static FieldSpec binary(unsigned k);

  uint64_t add(uint64_t a, uint64_t b) const {
    return kind == Kind::kBinary ? (a ^ b) : (a + b) % modulus;
  }
  uint64_t sub(uint64_t a, uint64_t b) const {
    return kind == Kind::kBinary ? (a ^ b) : (a + modulus - b) % modulus;
  }
  uint64_t mask() const { return bits >= 64 ? ~uint64_t{0} : ((uint64_t{1} << bits) - 1); }

  /// Field size as text ("257", "2^8").
  std::string to_string() const;
};

/// Deterministic 64-bit stream; the one generator used for message material
/// and index relabeling, so runs are reproducible from the seed alone.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}
  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform draw from [0, bound) by rejection; exact, no modulo bias.
  uint64_t bounded(uint64_t bound);

 private:
  uint64_t state_;
};

/// Uniform field element from the stream.
uint64_t draw_symbol(SplitMix64& rng, const FieldSpec& field);

bool is_prime_u64(uint64_t n);

}  // namespace abpir
