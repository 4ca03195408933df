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

#include "abpir/rational.hpp"

#include <cctype>

namespace abpir {

BigInt binom(long n, long k) {
  if (n < 0) throw InvalidArgument("binom: n must be nonnegative");
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rational::Rational(const BigInt& num, const BigInt& den) : v_(num, den) {
  if (sgn(den) == 0) throw ArithmeticError("Rational: zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  auto check_int = [&](const std::string& s) {
    if (s.empty()) throw InvalidArgument("Rational::parse: empty component in '" + text + "'");
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw InvalidArgument("Rational::parse: bare sign in '" + text + "'");
    for (; i < s.size(); i++)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw InvalidArgument("Rational::parse: bad character in '" + text + "'");
  };
  if (slash == std::string::npos) {
    check_int(text);
    return Rational(BigInt(text));
  }
  std::string num = text.substr(0, slash), den = text.substr(slash + 1);
  check_int(num);
  check_int(den);
  return Rational(BigInt(num), BigInt(den));
}

Rational Rational::operator-() const { return Rational(mpq_class(-v_)); }

Rational Rational::operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }

Rational Rational::operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }

Rational Rational::operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw ArithmeticError("Rational: division by zero");
  return Rational(mpq_class(v_ / o.v_));
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw ArithmeticError("Rational: reciprocal of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
  return Rational(r);
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  bool invert = e < 0;
  unsigned long n = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  if (invert && is_zero()) throw ArithmeticError("Rational: negative power of zero");
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), v_.get_num().get_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), v_.get_den().get_mpz_t(), n);
  return invert ? Rational(den, num) : Rational(num, den);
}

std::string Rational::to_string() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::to_decimal(int places) const {
  // Exact half-up rounding of |num|/den * 10^places, then reinsert the point.
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  BigInt n = num() * scale * 2 + (sign() < 0 ? -den() : den());
  BigInt q = n / (den() * 2);  // truncation toward zero matches half-up on |.|
  bool neg = sgn(q) < 0;
  std::string digits = BigInt(abs(q)).get_str();
  if (static_cast<int>(digits.size()) <= places)
    digits.insert(0, static_cast<size_t>(places) + 1 - digits.size(), '0');
  std::string out = digits.substr(0, digits.size() - places);
  if (places > 0) out += "." + digits.substr(digits.size() - places);
  return (neg && (q != 0)) ? "-" + out : out;
}

}  // namespace abpir
