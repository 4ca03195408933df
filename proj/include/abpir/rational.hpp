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

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

#include "abpir/errors.hpp"

namespace abpir {

/// Unbounded signed integer. Scheme quantities such as (N-1)^(K-D) and the
/// binomial weights overflow 64-bit words already for modest K, so every
/// count in the library is carried exactly.
using BigInt = mpz_class;

/// C(n, k) with the usual out-of-range convention: 0 when k < 0 or k > n.
BigInt binom(long n, long k);

/// Exact rational number, always held in canonical form: positive
/// denominator, gcd(|num|, den) = 1, and zero represented as 0/1.
///
/// Values are immutable in spirit: every operation returns a fresh canonical
/// value, so instances can be shared freely across threads.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& n) : v_(n) {}
  Rational(const BigInt& num, const BigInt& den);

  /// Parses "p/q" or "p". Throws InvalidArgument on malformed input and
  /// ArithmeticError on a zero denominator.
  static Rational parse(const std::string& text);

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  /// x^e for integer e; negative exponents require a nonzero value.
  Rational pow(long e) const;

  Rational reciprocal() const;

  bool operator==(const Rational& o) const { return mpq_equal(v_.get_mpq_t(), o.v_.get_mpq_t()) != 0; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  std::strong_ordering operator<=>(const Rational& o) const {
    int c = mpq_cmp(v_.get_mpq_t(), o.v_.get_mpq_t());
    return c < 0 ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

  /// Canonical text form "num/den", with "/den" omitted when den = 1. This is
  /// the wire format used by every CLI and JSON surface.
  std::string to_string() const;

  /// Display-only decimal approximation, rounded half-up to `places` digits.
  /// Never used in scheme math.
  std::string to_decimal(int places = 4) const;

  double to_double() const { return v_.get_d(); }

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

inline Rational operator+(long a, const Rational& b) { return Rational(a) + b; }
inline Rational operator-(long a, const Rational& b) { return Rational(a) - b; }
inline Rational operator*(long a, const Rational& b) { return Rational(a) * b; }

}  // namespace abpir
