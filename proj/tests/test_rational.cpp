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

#include <doctest.h>

#include "abpir/field.hpp"
#include "abpir/rational.hpp"

using abpir::BigInt;
using abpir::Rational;

TEST_CASE("binomial coefficients") {
  CHECK(abpir::binom(5, 2) == 10);
  CHECK(abpir::binom(3, 0) == 1);
  CHECK(abpir::binom(4, 5) == 0);
  CHECK(abpir::binom(4, -1) == 0);
  CHECK(abpir::binom(0, 0) == 1);
  // large enough to overflow 64-bit words
  CHECK(abpir::binom(80, 40) == BigInt("107507208733336176461620"));
  CHECK_THROWS_AS(abpir::binom(-1, 0), abpir::InvalidArgument);
}

TEST_CASE("basic arithmetic and canonical form") {
  CHECK(Rational(BigInt(1), BigInt(2)) + Rational(BigInt(1), BigInt(3)) ==
        Rational(BigInt(5), BigInt(6)));
  CHECK(Rational(BigInt(164), BigInt(270)) == Rational(BigInt(82), BigInt(135)));
  CHECK(Rational(BigInt(82), BigInt(135)) > Rational(BigInt(34), BigInt(56)));
  CHECK(Rational(BigInt(3), BigInt(-6)).to_string() == "-1/2");
  CHECK(Rational(BigInt(3), BigInt(-6)).den() == 2);
  CHECK(Rational(0).to_string() == "0");
  CHECK(Rational(0).den() == 1);
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), abpir::ArithmeticError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), abpir::ArithmeticError);
  CHECK_THROWS_AS(Rational(0).reciprocal(), abpir::ArithmeticError);
}

TEST_CASE("powers, parsing, display") {
  CHECK(Rational(BigInt(2), BigInt(3)).pow(3) == Rational(BigInt(8), BigInt(27)));
  CHECK(Rational(BigInt(2), BigInt(3)).pow(-2) == Rational(BigInt(9), BigInt(4)));
  CHECK(Rational(5).pow(0) == Rational(1));
  CHECK(Rational::parse("82/135").to_string() == "82/135");
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK_THROWS_AS(Rational::parse("1/x"), abpir::InvalidArgument);
  CHECK(Rational(BigInt(82), BigInt(135)).to_decimal(4) == "0.6074");
  CHECK(Rational(BigInt(17), BigInt(28)).to_decimal(4) == "0.6071");
  CHECK(Rational(BigInt(57), BigInt(80)).to_decimal(4) == "0.7125");
  CHECK(Rational(BigInt(-1), BigInt(2)).to_decimal(2) == "-0.50");
  CHECK(Rational(1).to_decimal(4) == "1.0000");
}

namespace {

Rational random_rational(abpir::SplitMix64& rng) {
  const auto num = static_cast<long>(rng.bounded(2001)) - 1000;
  const auto den = static_cast<long>(rng.bounded(999)) + 1;
  return Rational(BigInt(num), BigInt(den));
}

}  // namespace

TEST_CASE("property: comparison agrees with cross-multiplication") {
  abpir::SplitMix64 rng(7);
  for (int trial = 0; trial < 500; trial++) {
    Rational a = random_rational(rng), b = random_rational(rng);
    const BigInt lhs = a.num() * b.den();
    const BigInt rhs = b.num() * a.den();
    CHECK((a < b) == (lhs < rhs));
    CHECK((a == b) == (lhs == rhs));
  }
}

TEST_CASE("property: field axioms on random triples, always canonical") {
  abpir::SplitMix64 rng(13);
  for (int trial = 0; trial < 300; trial++) {
    Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    for (const Rational& v : {a + b, a * b, a - c}) {
      CHECK(v.den() > 0);
      CHECK(gcd(abs(v.num()), v.den()) == 1);
    }
  }
}
