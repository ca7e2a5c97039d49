// Copyright 2026 The paulimax authors
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

#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace paulimax {

class RationalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZeroError : public RationalError {
 public:
  DivisionByZeroError() : RationalError("division by zero") {}
};

class OverflowError : public RationalError {
 public:
  explicit OverflowError(const std::string& what) : RationalError(what) {}
};

class ParseError : public RationalError {
 public:
  explicit ParseError(const std::string& what) : RationalError(what) {}
};

// Exact signed fraction. Stored reduced with a positive 64-bit denominator;
// intermediate products run in 128 bits and are narrowed back with an
// explicit range check, so overflow raises instead of wrapping silently.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den) {
    *this = make(num, den);
  }

  // Accepts "a/b" with integer a, b and finite decimals such as "0.45"
  // (converted exactly: 0.45 -> 9/20). Leading/trailing blanks are ignored.
  static Rational parse(std::string_view text);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // Always "num/den", integers included ("3/1"), so rendering round-trips.
  std::string to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator-(Rational a) {
    return make(-i128{a.num_}, a.den_);
  }
  friend Rational operator+(Rational a, Rational b) {
    return make(i128{a.num_} * b.den_ + i128{b.num_} * a.den_,
                i128{a.den_} * b.den_);
  }
  friend Rational operator-(Rational a, Rational b) {
    return make(i128{a.num_} * b.den_ - i128{b.num_} * a.den_,
                i128{a.den_} * b.den_);
  }
  friend Rational operator*(Rational a, Rational b) {
    return make(i128{a.num_} * b.num_, i128{a.den_} * b.den_);
  }
  friend Rational operator/(Rational a, Rational b) {
    if (b.num_ == 0) throw DivisionByZeroError();
    return make(i128{a.num_} * b.den_, i128{a.den_} * b.num_);
  }

  Rational& operator+=(Rational o) { return *this = *this + o; }
  Rational& operator-=(Rational o) { return *this = *this - o; }
  Rational& operator*=(Rational o) { return *this = *this * o; }
  Rational& operator/=(Rational o) { return *this = *this / o; }

  friend bool operator==(Rational a, Rational b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(Rational a, Rational b) { return !(a == b); }
  friend bool operator<(Rational a, Rational b) { return cmp(a, b) < 0; }
  friend bool operator>(Rational a, Rational b) { return cmp(a, b) > 0; }
  friend bool operator<=(Rational a, Rational b) { return cmp(a, b) <= 0; }
  friend bool operator>=(Rational a, Rational b) { return cmp(a, b) >= 0; }

 private:
  using i128 = __int128;

  // Cross-multiplied comparison; both factors fit comfortably in 128 bits.
  static int cmp(Rational a, Rational b) {
    const i128 lhs = i128{a.num_} * b.den_;
    const i128 rhs = i128{b.num_} * a.den_;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static std::int64_t narrow(i128 v) {
    if (v > i128{std::numeric_limits<std::int64_t>::max()} ||
        v < i128{std::numeric_limits<std::int64_t>::min()}) {
      throw OverflowError("rational arithmetic exceeds 64-bit range");
    }
    return static_cast<std::int64_t>(v);
  }

  static Rational make(i128 num, i128 den) {
    if (den == 0) throw DivisionByZeroError();
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 g = gcd128(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    Rational r;
    r.num_ = narrow(num / g);
    r.den_ = narrow(den / g);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational abs(Rational r) { return r.sign() < 0 ? -r : r; }

inline Rational min(Rational a, Rational b) { return b < a ? b : a; }

inline Rational max(Rational a, Rational b) { return a < b ? b : a; }

inline std::ostream& operator<<(std::ostream& os, Rational r) {
  return os << r.to_string();
}

inline Rational Rational::parse(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  const std::string_view body = text.substr(begin, end - begin);

  const auto fail = [&](const char* why) {
    return ParseError("cannot parse rational '" + std::string(text) + "': " + why);
  };

  std::size_t i = 0;
  const auto read_sign = [&]() -> i128 {
    if (i < body.size() && (body[i] == '+' || body[i] == '-')) {
      return body[i++] == '-' ? -1 : 1;
    }
    return 1;
  };
  const auto read_digits = [&](int* count) -> i128 {
    i128 v = 0;
    int n = 0;
    while (i < body.size() && body[i] >= '0' && body[i] <= '9') {
      if (++n > 30) throw OverflowError("numeric literal too long: '" + std::string(text) + "'");
      v = v * 10 + (body[i] - '0');
      ++i;
    }
    if (n == 0) throw fail("expected digits");
    if (count != nullptr) *count = n;
    return v;
  };

  if (body.empty()) throw fail("empty string");

  const i128 sign = read_sign();
  int int_digits = 0;
  const i128 whole = read_digits(&int_digits);

  if (i == body.size()) {
    return make(sign * whole, 1);
  }
  if (body[i] == '/') {
    ++i;
    const i128 den_sign = read_sign();
    const i128 den = read_digits(nullptr);
    if (i != body.size()) throw fail("trailing characters");
    return make(sign * whole, den_sign * den);
  }
  if (body[i] == '.') {
    ++i;
    int frac_digits = 0;
    const i128 frac = read_digits(&frac_digits);
    if (i != body.size()) throw fail("trailing characters");
    if (int_digits + frac_digits > 30) {
      throw OverflowError("numeric literal too long: '" + std::string(text) + "'");
    }
    i128 scale = 1;
    for (int k = 0; k < frac_digits; ++k) scale *= 10;
    return make(sign * (whole * scale + frac), scale);
  }
  throw fail("unexpected character");
}

}  // namespace paulimax
