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

#include "intclust/exact_counts.h"

#include <gtest/gtest.h>

#include <functional>
#include <numeric>
#include <random>

#include "intclust/rational.h"
#include "intclust/status.h"
#include "oracles.h"

namespace intclust {
namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kIo;
}

constexpr uint32_t kOracleLimit = 1000000;

const PrimeTable& Table() {
  static const PrimeTable t(kOracleLimit);
  return t;
}

const std::vector<uint32_t>& Spf() {
  static const auto spf = oracle::SmallestFactors(kOracleLimit);
  return spf;
}

ClassTally Naive(size_t j, uint64_t n) {
  const auto [f, e] = oracle::CanonicalTallyByScan(n, Table().prime(j), Spf());
  return {static_cast<ClassId>(j), n, f, e};
}

// (u / p_i) prod_{l<i} (1 - 1/p_l)
Rational SizeEstimate(size_t i, uint64_t u) {
  Rational r(static_cast<int128>(u), static_cast<int128>(Table().prime(i)));
  for (size_t l = 1; l < i; ++l) {
    const int128 p = Table().prime(l);
    r = r * Rational(p - 1, p);
  }
  return r;
}

TEST(FloorIdentity, Examples) {
  const uint64_t q35[] = {3, 5};
  const FloorIdentity a = FloorIdentitySides(105, 2, q35);
  EXPECT_EQ(a.lhs, 3u);
  EXPECT_EQ(a.rhs, 3u);
  const uint64_t q3[] = {3};
  const FloorIdentity b = FloorIdentitySides(9, 4, q3);
  EXPECT_EQ(b.lhs, 0u);
  EXPECT_EQ(b.rhs, 0u);
  const uint64_t q357[] = {3, 5, 7};
  const FloorIdentity c = FloorIdentitySides(kN0, 2, q357);
  EXPECT_EQ(c.lhs, c.rhs);
  // With u = 2 the floor is exact: n/(2q) - 1/2.
  EXPECT_EQ(c.lhs, (kN0 / 105 - 1) / 2);
}

TEST(FloorIdentity, RejectsInvalidInputs) {
  const uint64_t q5[] = {5};
  EXPECT_EQ(CodeOf([&] { FloorIdentitySides(21, 2, q5); }), ErrorCode::kInvalidArgument);
  const uint64_t q3[] = {3};
  EXPECT_EQ(CodeOf([&] { FloorIdentitySides(21, 6, q3); }), ErrorCode::kInvalidArgument);
  const uint64_t q9[] = {9};
  EXPECT_EQ(CodeOf([&] { FloorIdentitySides(81, 2, q9); }), ErrorCode::kInvalidArgument);
  const uint64_t q33[] = {3, 3};
  EXPECT_EQ(CodeOf([&] { FloorIdentitySides(81, 2, q33); }), ErrorCode::kInvalidArgument);
}

TEST(FloorIdentity, RandomInputsAgree) {
  std::mt19937_64 rng(7);
  const uint32_t odd_primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  for (int trial = 0; trial < 10000; ++trial) {
    uint64_t n = 1;
    std::vector<uint64_t> divisors;
    for (uint32_t q : odd_primes) {
      if (rng() % 3 != 0) continue;
      const int e = 1 + rng() % 3;
      uint64_t qe = 1;
      for (int k = 0; k < e; ++k) qe *= q;
      if (n > (uint64_t{1} << 50) / qe) break;
      n *= qe;
      divisors.push_back(q);
    }
    if (divisors.empty()) continue;
    std::vector<uint64_t> subset;
    for (uint64_t q : divisors) {
      if (rng() % 2) subset.push_back(q);
    }
    if (subset.empty()) subset.push_back(divisors.front());
    uint64_t u = 1 + rng() % 1000;
    while (std::gcd(u, n) != 1) ++u;
    const FloorIdentity s = FloorIdentitySides(n, u, subset);
    ASSERT_EQ(s.lhs, s.rhs) << n << " " << u;
  }
}

TEST(SizeS, Examples) {
  for (uint64_t u : {3u, 15u, 999u}) EXPECT_EQ(SizeSExact(1, u, Table()).value, (u - 1) / 2);
  for (uint64_t n : {9u, 15u, 105u, 3003u}) {
    EXPECT_EQ(SizeSExact(2, n - 1, Table()).value, static_cast<int64_t>((n - 3) / 6)) << n;
  }
  EXPECT_EQ(SizeSExact(3, 30, Table()).value, 2);
}

TEST(SizeS, BudgetRefusesLargeIndex) {
  PrimeTable big(200);
  EXPECT_EQ(CodeOf([&] { SizeSExact(26, 100000, big); }), ErrorCode::kRefused);
  EXPECT_NO_THROW(SizeSExact(25, 100000, big));
  EXPECT_EQ(CodeOf([&] { SizeSExact(12, 1000, big, TermBudget{1000}); }), ErrorCode::kRefused);
}

TEST(SizeS, LiteralSumMatchesRecurrenceAndEnumeration) {
  const RoughCounter counter(Table());
  std::vector<uint64_t> count(20, 0);
  for (uint64_t u = 2; u <= 20000; ++u) {
    ++count[std::min<size_t>(19, Table().index_of(Spf()[u]))];
    for (size_t i = 1; i < 19; ++i) {
      ASSERT_EQ(ClassSize(i, u, counter), count[i]) << i << " " << u;
      if (u % 97 == 0) {
        ASSERT_EQ(SizeSExact(i, u, Table()).value, static_cast<int64_t>(count[i]));
      }
    }
  }
}

TEST(SizeS, ErrorBoundForOddU) {
  // | |S(i,u)| - (u/p_i) prod (1 - 1/p_l) | <= 2^(i-2)
  for (size_t i = 2; i <= 12; ++i) {
    const Rational est = SizeEstimate(i, 1);
    const Rational limit(int128{1} << (i - 2));
    for (uint64_t u = 3; u <= 100000; u += 2) {
      const Rational exact(SizeSExact(i, u, Table()).value);
      const Rational diff = exact - est * Rational(static_cast<int128>(u));
      const Rational abs = diff < Rational(0) ? -diff : diff;
      ASSERT_LE(abs, limit) << "i=" << i << " u=" << u;
    }
  }
}

TEST(RoughCounter, MatchesBruteCount) {
  const RoughCounter counter(Table());
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    const uint64_t y = rng() % 200000;
    const size_t a = rng() % 40;
    uint64_t brute = 0;
    for (uint64_t k = 1; k <= y; ++k) {
      bool rough = true;
      for (size_t l = 1; l <= a && rough; ++l) rough = k % Table().prime(l) != 0;
      brute += rough;
    }
    ASSERT_EQ(counter.Count(y, a), brute) << y << " " << a;
  }
}

TEST(EvenClass, Examples) {
  EXPECT_EQ(TallyEvenClass(Factorize(15, Table())), (ClassTally{1, 15, 3, 4}));
  EXPECT_EQ(TallyEvenClass(Factorize(9, Table())), (ClassTally{1, 9, 1, 3}));
  const ClassTally t = TallyEvenClass(Factorize(kN0, Table()));
  EXPECT_EQ(t.enemies, 18247680u);
  EXPECT_EQ(t.friends, (kN0 - 1) / 2 - 36495360 / 2);
  EXPECT_EQ(CodeOf([] { TallyEvenClass(Factorize(12, Table())); }),
            ErrorCode::kInvalidArgument);
}

TEST(EvenClass, MatchesScanForOddNTo10000) {
  for (uint64_t n = 3; n <= 10000; n += 2) {
    ASSERT_EQ(TallyEvenClass(Factorize(n, Table())), Naive(1, n)) << n;
  }
}

TEST(TallyExact, Examples) {
  EXPECT_EQ(TallyExact(2, Factorize(25, Table()), Table()), (ClassTally{2, 25, 1, 3}));
  EXPECT_EQ(TallyExact(1, Factorize(15, Table()), Table()), (ClassTally{1, 15, 3, 4}));
  EXPECT_EQ(TallyExact(3, Factorize(539, Table()), Table()), Naive(3, 539));
  EXPECT_EQ(TallyExact(3, Factorize(539, Table()), Table()), TallyWheelOracle(3, 539, Table()));
}

TEST(TallyExact, UnsupportedCases) {
  EXPECT_EQ(CodeOf([] { TallyExact(2, Factorize(15, Table()), Table()); }),
            ErrorCode::kUnsupported);
  EXPECT_EQ(CodeOf([] { TallyExact(2, Factorize(50, Table()), Table()); }),
            ErrorCode::kUnsupported);
}

TEST(TallyExact, TermCountOfFriendSum) {
  // 2^(t+j-1) - 2^(j-1) floor terms for t prime divisors.
  const SieveTermSum s = FriendsExact(4, Factorize(13 * 17 * 19, Table()), Table());
  EXPECT_EQ(s.terms, (uint64_t{1} << 6) - (uint64_t{1} << 3));
}

TEST(OracleEquivalence, AllValidPairsTo5000) {
  const RoughCounter counter(Table());
  for (uint64_t n = 3; n <= 5000; n += 2) {
    const Factorization f = Factorize(n, Table());
    const uint64_t q1 = f.smallest_prime();
    for (size_t j = 1; Table().prime(j) < q1; ++j) {
      const ClassTally naive = Naive(j, n);
      // The literal subset sum has 2^(t+j-1) terms; large j goes through the
      // pruned recurrence instead.
      const ClassTally exact =
          j + f.distinct() <= 21 ? TallyExact(j, f, Table()) : CanonicalTally(j, f, counter);
      ASSERT_EQ(exact, naive) << "n=" << n << " j=" << j;
      ASSERT_EQ(TallyWheelOracle(j, n, Table()), naive) << "n=" << n << " j=" << j;
    }
  }
}

TEST(OracleEquivalence, CanonicalTallyEveryClassTo2500) {
  const RoughCounter counter(Table());
  for (uint64_t n = 3; n <= 2500; ++n) {
    const Factorization f = Factorize(n, Table());
    for (size_t j = 1; Table().prime(j) < n; ++j) {
      ASSERT_EQ(CanonicalTally(j, f, counter), Naive(j, n)) << "n=" << n << " j=" << j;
    }
  }
}

TEST(OracleEquivalence, CanonicalTallyLargeSamples) {
  const RoughCounter counter(Table());
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const uint64_t n = 3 + rng() % (kOracleLimit - 3);
    const Factorization f = Factorize(n, Table());
    const size_t j = 1 + rng() % std::min<uint64_t>(12, Table().pi(n - 1));
    ASSERT_EQ(CanonicalTally(j, f, counter), Naive(j, n)) << "n=" << n << " j=" << j;
  }
}

TEST(Tally, FriendsPlusEnemiesIsClassSize) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const uint64_t n = 3 + 2 * (rng() % 400000);
    const Factorization f = Factorize(n, Table());
    for (size_t j = 1; j < 8 && Table().prime(j) < f.smallest_prime(); ++j) {
      const ClassTally t = TallyExact(j, f, Table());
      ASSERT_EQ(static_cast<int64_t>(t.total()), SizeSExact(j, n - 1, Table()).value);
    }
  }
}

TEST(Tally, FriendBalanceErrorBound) {
  // | (B - E) - ((n-1)/p_j) prod_{l<j} (1 - 1/p_l) (1 - 2 prod_k (1 - 1/q_k)) | <= 2^(t+j-2)
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 500) {
    const uint64_t n = 3 + 2 * (rng() % 499999);
    const Factorization f = Factorize(n, Table());
    const size_t max_j = Table().pi(f.smallest_prime() - 1);
    if (max_j < 2) continue;
    const size_t j = 2 + rng() % (max_j - 1);
    if (j > 20) continue;
    Rational q_product(1);
    for (const auto& pp : f.factors) {
      const int128 q = pp.prime;
      q_product = q_product * Rational(q - 1, q);
    }
    const Rational est = SizeEstimate(j, n - 1) * (Rational(1) - Rational(2) * q_product);
    const ClassTally t = TallyExact(j, f, Table());
    const Rational diff = Rational(t.balance()) - est;
    const Rational abs = diff < Rational(0) ? -diff : diff;
    ASSERT_LE(abs, Rational(int128{1} << (f.distinct() + j - 2))) << n << " " << j;
    ++checked;
  }
}

TEST(WheelOracle, Examples) {
  const uint64_t n = 19ULL * 23 * 29 * 31;
  EXPECT_LT(TallyWheelOracle(7, n, Table()).balance(), 0);
  EXPECT_EQ(TallyWheelOracle(5, 100, Table()), Naive(5, 100));
  for (uint64_t p : {101u, 7919u, 104729u}) {
    for (size_t j = 1; j <= 12; ++j) EXPECT_EQ(TallyWheelOracle(j, p, Table()).friends, 0u);
  }
}

TEST(WheelOracle, Residues) {
  const auto r = WheelResidues210();
  ASSERT_EQ(r.size(), 48u);
  EXPECT_EQ(r.front(), 1u);
  EXPECT_EQ(r.back(), 209u);
  for (uint32_t x : r) EXPECT_EQ(std::gcd(x, 210u), 1u);
}

}  // namespace
}  // namespace intclust
