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

// Where the smallest-prime-factor clustering stops being greedy.
//
// An odd n divisible by 3 leaves class 2 for the even class exactly when
// prod_{k>=2} (1 - 1/q_k) < 1/2 over its other prime divisors q_k. The
// functions below locate the first such n, tabulate the sufficient bounds
// n1(i, j, t) that keep larger integers out of smaller classes, count the
// three-prime candidates those bounds leave open, and evaluate the prime
// counting inequality that closes the remaining cases.

#ifndef INTCLUST_THRESHOLD_H_
#define INTCLUST_THRESHOLD_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "intclust/prime_toolkit.h"
#include "intclust/rational.h"

namespace intclust {

// Exact test of prod_{k>=2}(1 - 1/q_k) < 1/2, i.e. 2 prod(q_k - 1) < prod q_k.
// Exponents are ignored. n must be odd with smallest prime 3.
bool EvenClassBeatsClassTwo(const Factorization& f);

// Smallest odd n <= bound divisible by 3 that passes the test above, found by
// a depth-first search over squarefree kernels. Primes come from `table`.
std::optional<uint64_t> FindN0(uint64_t bound, const PrimeTable& table);

// 5 * 7 * 11 * ... * 43, the analogous first candidate for n coprime to 3.
// With q1 = 5 the even class beats class 3 when prod_{k>=2}(1 - 1/q_k) < 13/24.
struct CoprimeCandidate {
  uint128 value;
  bool holds;                 // the inequality for 7, 11, ..., 43
  bool holds_without_last;    // the same product without 43
};
CoprimeCandidate CoprimeToThreeCandidate();

// Bound n1(i, j, t) = floor((2^(t+j-2) + 2^(i-2)) / T) with
// T = A_i + A_j (2 prod_k (1 - 1/q_k) - 1), A_m = (1/p_m) prod_{l<m}(1 - 1/p_l),
// and q_1..q_t the t consecutive primes from p_i. Above n1 an integer with
// those t prime divisors cannot join class j.
struct ThresholdRecord {
  size_t i = 0;
  size_t j = 0;
  size_t t = 0;
  uint64_t p_i = 0;
  uint64_t n1 = 0;
  uint128 product = 0;            // q_1 * ... * q_t
  bool bound_covers_all = false;  // n1 <= product: every such integer is above it
  Rational threshold;             // T
};

// Needs 3 <= i, 1 <= j < i, t >= 1. T <= 0 is kDegenerate; a value that does
// not fit 128-bit arithmetic is kOutOfRange.
ThresholdRecord N1Value(size_t i, size_t j, size_t t, const PrimeTable& table);

// Largest t with q_1 * ... * q_t <= kN0.
size_t MaxFactorCount(size_t i, const PrimeTable& table);

// Cells (i, i-1, t) for 3 <= i <= 19, 1 <= t <= MaxFactorCount(i), keeping
// those with n1 <= kN0.
std::vector<ThresholdRecord> DisplayedN1Table(const PrimeTable& table);

// Cells (i, i-1, t) for every t <= MaxFactorCount(i), unfiltered.
std::vector<ThresholdRecord> N1Column(size_t i, const PrimeTable& table);

enum class CensusReading {
  kSquarefree,    // n = p * q * r, p < q < r
  kExactlyThree,  // exactly three distinct primes, any exponents
  kAtLeastThree,  // three or more distinct primes, any exponents
};

const char* CensusReadingName(CensusReading reading);
std::optional<CensusReading> ParseCensusReading(std::string_view name);

// Integers n < bound whose smallest prime is p and whose factorization fits
// `reading`.
struct CandidateCensus {
  uint64_t p = 0;
  uint64_t bound = 0;
  uint64_t count = 0;
  CensusReading reading = CensusReading::kSquarefree;
};

// p must be a tabulated prime and bound - 1 <= table.limit().
CandidateCensus CensusThreeFactor(uint64_t p, uint64_t bound, const PrimeTable& table,
                                  CensusReading reading = CensusReading::kSquarefree);

// The counted integers themselves, ascending.
std::vector<uint64_t> ListCandidates(uint64_t p, uint64_t bound, const PrimeTable& table,
                                     CensusReading reading = CensusReading::kSquarefree);

// n1(i, i-1, 3) for p = p_i when that cell is in DisplayedN1Table, else kN0.
uint64_t DefaultCensusBound(uint64_t p, const PrimeTable& table);

// pi(x) - pi(sqrt x) > 18 pi(x/t) + 56, with x snapped to floor(x).
struct PrimeCountPoint {
  double x = 0;
  double t = 0;
  bool exact = false;  // floor(x) within the table; otherwise bounds only
  int64_t lhs = 0;
  int64_t rhs = 0;
  bool holds = false;
  // The same inequality with pi replaced by its lower bound on the left and
  // its upper bound on the right.
  double bound_lhs = 0;
  double bound_rhs = 0;
  bool bounds_hold = false;
  bool bounds_bracket = true;  // lower <= pi <= upper at x, sqrt x and x/t
};

std::vector<PrimeCountPoint> CheckPrimeCountInequality(const std::vector<double>& xs,
                                     const std::vector<double>& ts,
                                     const PrimeTable& table);

// Friend and enemy bounds for n in class l, l >= 12 (p_l >= 37), when n < kN0
// has smallest prime q1 > p_l and q1 >= 41:
//   friends <= 52 + 18 pi(kN0 / (p_l q1)),
//   enemies >= pi(kN0 / p_l) - pi(p_l) - 4.
// When p_l^3 > kN0 and n = q1 q2, the friends are at most p_l q1 and p_l q2.
struct LargeClassBounds {
  uint64_t friends_bound = 0;
  int64_t enemies_bound = 0;
  bool two_factor_case = false;
};

LargeClassBounds LargeClassCensus(uint64_t n, size_t ell, const PrimeTable& table);

}  // namespace intclust

#endif  // INTCLUST_THRESHOLD_H_
