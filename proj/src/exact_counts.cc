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

#include <bit>
#include <numeric>
#include <string>

#include "intclust/rational.h"
#include "intclust/status.h"

namespace intclust {
namespace {

bool IsPrimeByTrial(uint64_t q) {
  if (q < 2) return false;
  for (uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

// Saturating product: anything above `cap` is reported as cap + 1.
uint64_t MulCap(uint64_t a, uint64_t b, uint64_t cap) {
  uint128 r = uint128{a} * b;
  return r > cap ? cap + 1 : static_cast<uint64_t>(r);
}

// sum over H subset of primes[0..count) of (-1)^|H| floor(y / (d * prod H)),
// skipping the subtrees whose divisor already exceeds y.
int64_t AlternatingFloorSum(uint64_t y, uint64_t d, std::span<const uint32_t> primes,
                            size_t from) {
  if (d > y) return 0;
  int64_t sum = static_cast<int64_t>(y / d);
  for (size_t k = from; k < primes.size(); ++k) {
    const uint64_t next = MulCap(d, primes[k], y);
    if (next > y) break;  // primes ascend: later ones overshoot too
    sum -= AlternatingFloorSum(y, next, primes, k + 1);
  }
  return sum;
}

uint64_t Pow2Checked(uint64_t bits, const TermBudget& budget, const char* what) {
  if (bits >= 63 || (uint64_t{1} << bits) > budget.max_terms) {
    Fail(ErrorCode::kRefused,
         std::string(what) + ": 2^" + std::to_string(bits) +
             " subset terms exceed the budget of " + std::to_string(budget.max_terms));
  }
  return uint64_t{1} << bits;
}

constexpr std::array<uint32_t, 48> MakeWheel210() {
  std::array<uint32_t, 48> r{};
  size_t k = 0;
  for (uint32_t x = 1; x < 210; ++x) {
    if (x % 2 && x % 3 && x % 5 && x % 7) r[k++] = x;
  }
  return r;
}

constexpr std::array<uint32_t, 48> kWheel210 = MakeWheel210();

}  // namespace

std::span<const uint32_t> WheelResidues210() { return kWheel210; }

FloorIdentity FloorIdentitySides(uint64_t n, uint64_t u, std::span<const uint64_t> qs) {
  if (n < 2 || u == 0) Fail(ErrorCode::kInvalidArgument, "need n >= 2 and u >= 1");
  uint64_t prod = 1;
  for (size_t k = 0; k < qs.size(); ++k) {
    const uint64_t q = qs[k];
    if (q % 2 == 0 || !IsPrimeByTrial(q)) {
      Fail(ErrorCode::kInvalidArgument, std::to_string(q) + " is not an odd prime");
    }
    for (size_t l = 0; l < k; ++l) {
      if (qs[l] == q) Fail(ErrorCode::kInvalidArgument, "primes must be distinct");
    }
    if (n % q != 0) {
      Fail(ErrorCode::kInvalidArgument, std::to_string(q) + " does not divide n");
    }
    if (u % q == 0) {
      Fail(ErrorCode::kInvalidArgument, "u must be coprime to every prime");
    }
    prod *= q;
  }
  const uint128 denom = uint128{u} * prod;
  const uint64_t lhs = static_cast<uint64_t>((n - 1) / denom);
  const uint64_t rhs = (n / prod - 1) / u;
  return {lhs, rhs};
}

RoughCounter::RoughCounter(const PrimeTable& table) : table_(&table) {
  modulus_[0] = 1;
  totatives_[0] = 1;
  coprime_prefix_[0] = {0, 1};
  for (size_t a = 1; a <= kWheelLevels; ++a) {
    const uint64_t p = table.prime(a);
    modulus_[a] = modulus_[a - 1] * p;
    totatives_[a] = totatives_[a - 1] * (p - 1);
    auto& prefix = coprime_prefix_[a];
    prefix.assign(modulus_[a] + 1, 0);
    for (uint64_t r = 1; r <= modulus_[a]; ++r) {
      bool coprime = true;
      for (size_t l = 1; l <= a && coprime; ++l) coprime = r % table.prime(l) != 0;
      prefix[r] = prefix[r - 1] + (coprime ? 1 : 0);
    }
  }
}

uint64_t RoughCounter::Count(uint64_t y, size_t a) const {
  if (a > table_->size()) {
    Fail(ErrorCode::kOutOfRange, "prime index " + std::to_string(a) + " beyond the table");
  }
  return CountRec(y, a);
}

uint64_t RoughCounter::CountRec(uint64_t y, size_t a) const {
  if (y == 0) return 0;
  if (a <= kWheelLevels) {
    const uint64_t m = modulus_[a];
    return (y / m) * totatives_[a] + coprime_prefix_[a][y % m];
  }
  const auto primes = table_->primes();
  const uint64_t next = a < primes.size() ? primes[a] : UINT64_MAX;
  if (y < next) return 1;
  if (y <= table_->limit() && uint128{next} * next > y) {
    return 1 + table_->pi(y) - a;  // 1 and the primes in (p_a, y]
  }
  return CountRec(y, a - 1) - CountRec(y / primes[a - 1], a - 1);
}

SieveTermSum SizeSExact(size_t i, uint64_t u, const PrimeTable& table,
                        const TermBudget& budget) {
  if (i == 0) Fail(ErrorCode::kInvalidArgument, "class index must be >= 1");
  if (u < 2) Fail(ErrorCode::kInvalidArgument, "S(i, u) needs u >= 2");
  const uint64_t terms = Pow2Checked(i - 1, budget, "S(i, u)");
  const uint64_t p = table.prime(i);
  const auto smaller = table.primes().subspan(0, i - 1);
  return {AlternatingFloorSum(u, p, smaller, 0), terms};
}

uint64_t ClassSize(size_t i, uint64_t u, const RoughCounter& counter) {
  if (i == 0) Fail(ErrorCode::kInvalidArgument, "class index must be >= 1");
  const uint64_t p = counter.table().prime(i);
  if (u < p) return 0;
  return counter.Count(u / p, i - 1);
}

ClassTally TallyEvenClass(const Factorization& f) {
  const uint64_t n = f.n;
  if (n % 2 == 0 || n < 3) {
    Fail(ErrorCode::kInvalidArgument, "even-class shortcut needs odd n >= 3");
  }
  const uint64_t enemies = Totient(f) / 2;
  return {1, n, (n - 1) / 2 - enemies, enemies};
}

namespace {

void CheckTallySetting(size_t j, const Factorization& f, const PrimeTable& table) {
  if (j < 2) Fail(ErrorCode::kInvalidArgument, "expected class index >= 2");
  if (f.n % 2 == 0) {
    Fail(ErrorCode::kUnsupported, "double sieve sum needs odd n");
  }
  if (table.prime(j) >= f.smallest_prime()) {
    Fail(ErrorCode::kUnsupported,
         "double sieve sum needs p_j below the smallest prime factor of n");
  }
}

}  // namespace

SieveTermSum FriendsExact(size_t j, const Factorization& f, const PrimeTable& table,
                          const TermBudget& budget) {
  CheckTallySetting(j, f, table);
  const size_t t = f.distinct();
  Pow2Checked(t + j - 1, budget, "friend count");
  const uint64_t y = f.n - 1;
  const uint64_t pj = table.prime(j);
  const auto smaller = table.primes().subspan(0, j - 1);
  int64_t friends = 0;
  for (uint64_t mask = 1; mask < (uint64_t{1} << t); ++mask) {
    uint64_t d = pj;
    for (size_t k = 0; k < t; ++k) {
      if (mask >> k & 1) d = MulCap(d, f.factors[k].prime, y);
    }
    const int64_t inner = AlternatingFloorSum(y, d, smaller, 0);
    friends += (std::popcount(mask) % 2 == 1) ? inner : -inner;
  }
  const uint64_t terms = ((uint64_t{1} << t) - 1) << (j - 1);
  return {friends, terms};
}

ClassTally TallyExact(size_t j, const Factorization& f, const PrimeTable& table,
                      const TermBudget& budget) {
  if (j == 1) return TallyEvenClass(f);
  const SieveTermSum friends = FriendsExact(j, f, table, budget);
  const SieveTermSum size = SizeSExact(j, f.n - 1, table, budget);
  const auto b = static_cast<uint64_t>(friends.value);
  return {static_cast<ClassId>(j), f.n, b, static_cast<uint64_t>(size.value) - b};
}

ClassTally CanonicalTally(size_t j, const Factorization& f, const RoughCounter& counter) {
  const uint64_t n = f.n;
  if (n < 3) Fail(ErrorCode::kInvalidArgument, "tally needs n >= 3");
  if (j == 1 && n % 2 == 1) return TallyEvenClass(f);
  const uint64_t y = n - 1;
  const uint64_t pj = counter.table().prime(j);
  const uint64_t size = ClassSize(j, y, counter);
  if (n % pj == 0) return {static_cast<ClassId>(j), n, size, 0};

  uint64_t larger[64];
  size_t t = 0;
  for (const auto& pp : f.factors) {
    if (pp.prime > pj) larger[t++] = pp.prime;
  }
  int64_t friends = 0;
  for (uint64_t mask = 1; mask < (uint64_t{1} << t); ++mask) {
    uint64_t d = pj;
    for (size_t k = 0; k < t && d <= y; ++k) {
      if (mask >> k & 1) d = MulCap(d, larger[k], y);
    }
    if (d > y) continue;
    const auto c = static_cast<int64_t>(counter.Count(y / d, j - 1));
    friends += (std::popcount(mask) % 2 == 1) ? c : -c;
  }
  const auto b = static_cast<uint64_t>(friends);
  return {static_cast<ClassId>(j), n, b, size - b};
}

ClassTally TallyWheelOracle(size_t j, uint64_t n, const PrimeTable& table) {
  if (j == 0) Fail(ErrorCode::kInvalidArgument, "class index must be >= 1");
  if (n < 3) Fail(ErrorCode::kInvalidArgument, "tally needs n >= 3");
  const uint64_t pj = table.prime(j);
  const uint64_t kmax = (n - 1) / pj;
  ClassTally tally{static_cast<ClassId>(j), n, 0, 0};
  auto classify = [&](uint64_t m) {
    if (std::gcd(m, n) > 1) {
      ++tally.friends;
    } else {
      ++tally.enemies;
    }
  };

  if (j < 5) {
    for (uint64_t k = 1; k <= kmax; ++k) {
      bool rough = true;
      for (size_t l = 1; l < j && rough; ++l) rough = k % table.prime(l) != 0;
      if (rough) classify(pj * k);
    }
    return tally;
  }

  // Products of p_5..p_{j-1}, each kept below 2^64, for the gcd filter.
  std::vector<uint64_t> guards;
  uint64_t acc = 1;
  for (size_t l = 5; l < j; ++l) {
    const uint64_t p = table.prime(l);
    if (uint128{acc} * p > UINT64_MAX) {
      guards.push_back(acc);
      acc = 1;
    }
    acc *= p;
  }
  if (acc > 1) guards.push_back(acc);

  for (uint64_t base = 0; base <= kmax; base += 210) {
    for (uint32_t r : kWheel210) {
      const uint64_t k = base + r;
      if (k > kmax) break;
      const uint64_t m = pj * k;
      bool member = true;
      for (uint64_t g : guards) {
        if (std::gcd(m, g) != 1) {
          member = false;
          break;
        }
      }
      if (member) classify(m);
    }
  }
  return tally;
}

}  // namespace intclust
