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

#include "abpir/field.hpp"

#include <cctype>

namespace abpir {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

uint64_t parse_u64(const std::string& s) {
  if (s.empty()) throw InvalidArgument("field: empty number");
  uint64_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw InvalidArgument("field: bad number '" + s + "'");
    uint64_t d = static_cast<uint64_t>(c - '0');
    if (v > (~uint64_t{0} - d) / 10) throw InvalidArgument("field: number too large '" + s + "'");
    v = v * 10 + d;
  }
  return v;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic Miller-Rabin for 64-bit inputs with the standard base set.
  uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    r++;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; i++) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(uint64_t p) {
  if (!is_prime_u64(p)) throw InvalidArgument("field: " + std::to_string(p) + " is not prime");
  FieldSpec f;
  f.kind = Kind::kPrime;
  f.modulus = p;
  return f;
}

FieldSpec FieldSpec::binary(unsigned k) {
  if (k < 1 || k > 64) throw InvalidArgument("field: 2^k needs k in [1, 64]");
  FieldSpec f;
  f.kind = Kind::kBinary;
  f.bits = k;
  return f;
}

FieldSpec FieldSpec::parse(const std::string& text) {
  auto caret = text.find('^');
  if (caret != std::string::npos) {
    if (text.substr(0, caret) != "2") throw InvalidArgument("field: only 2^k is supported, got '" + text + "'");
    uint64_t k = parse_u64(text.substr(caret + 1));
    if (k < 1 || k > 64) throw InvalidArgument("field: 2^k needs k in [1, 64]");
    return binary(static_cast<unsigned>(k));
  }
  uint64_t q = parse_u64(text);
  if (q == 2) return binary(1);
  if (q != 0 && (q & (q - 1)) == 0) {
    unsigned k = 0;
    while ((uint64_t{1} << k) != q) k++;
    return binary(k);
  }
  if (is_prime_u64(q)) return prime(q);
  throw InvalidArgument("field: size must be a prime or a power of two, got '" + text + "'");
}

std::string FieldSpec::to_string() const {
  if (kind == Kind::kPrime) return std::to_string(modulus);
  return bits == 1 ? "2" : "2^" + std::to_string(bits);
}

uint64_t SplitMix64::bounded(uint64_t bound) {
  if (bound == 0) throw InvalidArgument("bounded: zero bound");
  // Largest multiple of bound representable in 64 bits, minus one.
  const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % bound + 1) % bound;
  uint64_t x;
  do {
    x = next();
  } while (x > limit);
  return x % bound;
}

uint64_t draw_symbol(SplitMix64& rng, const FieldSpec& field) {
  if (field.kind == FieldSpec::Kind::kBinary) return rng.next() & field.mask();
  return rng.bounded(field.modulus);
}

}  // namespace abpir
