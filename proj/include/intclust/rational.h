// Copyright 2026 The intclust Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact rationals over signed 128-bit integers. Every operation is checked:
// an intermediate that does not fit raises kOutOfRange instead of wrapping.

#ifndef INTCLUST_RATIONAL_H_
#define INTCLUST_RATIONAL_H_

#include <cstdint>
#include <string>

#include "intclust/status.h"

namespace intclust {

using int128 = __int128;
using uint128 = unsigned __int128;

namespace checked {

inline int128 Mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    Fail(ErrorCode::kOutOfRange, "128-bit multiplication overflow");
  }
  return r;
}

inline int128 Add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r)) {
    Fail(ErrorCode::kOutOfRange, "128-bit addition overflow");
  }
  return r;
}

inline int128 Abs(int128 a) { return a < 0 ? -a : a; }

inline int128 Gcd(int128 a, int128 b) {
  a = Abs(a);
  b = Abs(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Floor division for a positive divisor.
inline int128 FloorDiv(int128 a, int128 b) {
  int128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

}  // namespace checked

std::string ToString(int128 v);

class Rational {
 public:
  Rational() = default;
  Rational(int128 num) : num_(num), den_(1) {}  // NOLINT: implicit by intent
  Rational(int128 num, int128 den) : num_(num), den_(den) {
    if (den_ == 0) Fail(ErrorCode::kInvalidArgument, "zero denominator");
    Normalize();
  }

  int128 num() const { return num_; }
  int128 den() const { return den_; }

  Rational operator+(const Rational& o) const {
    // Combine over lcm(den, o.den) to keep intermediates small.
    int128 g = checked::Gcd(den_, o.den_);
    int128 lhs = checked::Mul(num_, o.den_ / g);
    int128 rhs = checked::Mul(o.num_, den_ / g);
    return Rational(checked::Add(lhs, rhs), checked::Mul(den_ / g, o.den_));
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator-(const Rational& o) const { return *this + (-o); }
  Rational operator*(const Rational& o) const {
    int128 g1 = checked::Gcd(num_, o.den_);
    int128 g2 = checked::Gcd(o.num_, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational(checked::Mul(num_ / g1, o.num_ / g2),
                    checked::Mul(den_ / g2, o.den_ / g1));
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) Fail(ErrorCode::kInvalidArgument, "division by zero");
    return *this * Rational(o.den_, o.num_);
  }

  int Compare(const Rational& o) const {
    int128 l = checked::Mul(num_, o.den_);
    int128 r = checked::Mul(o.num_, den_);
    return l < r ? -1 : (l > r ? 1 : 0);
  }
  bool operator<(const Rational& o) const { return Compare(o) < 0; }
  bool operator<=(const Rational& o) const { return Compare(o) <= 0; }
  bool operator>(const Rational& o) const { return Compare(o) > 0; }
  bool operator>=(const Rational& o) const { return Compare(o) >= 0; }
  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

  int128 Floor() const { return checked::FloorDiv(num_, den_); }
  int128 Ceil() const { return -checked::FloorDiv(-num_, den_); }
  double ToDouble() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  std::string ToString() const;

 private:
  void Normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    int128 g = checked::Gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  int128 num_ = 0;
  int128 den_ = 1;
};

}  // namespace intclust

#endif  // INTCLUST_RATIONAL_H_
