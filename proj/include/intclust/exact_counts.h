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

// Exact counting over the canonical classes.
//
// S(i, u) is the set of m <= u whose smallest prime factor is the i-th prime.
// For a probe n, the friends of n in class j are the members of S(j, n-1)
// sharing a prime with n, the enemies are the rest.
//
// Two evaluation routes are provided for every count:
//   * the literal inclusion-exclusion expansion over subsets of the smaller
//     primes (and of n's prime divisors), budgeted because it has 2^(j-1)
//     terms per subset of divisors;
//   * RoughCounter, Legendre's recurrence phi(y,a) = phi(y,a-1) -
//     phi(y/p_a, a-1) with wheel and pi(y) cut-offs. It is the same
//     alternating sum with the vanishing terms never generated, and it is what
//     the greedy engine uses at scale.
// All arithmetic is integer; nothing on these paths touches floating point.

#ifndef INTCLUST_EXACT_COUNTS_H_
#define INTCLUST_EXACT_COUNTS_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "intclust/partition.h"
#include "intclust/prime_toolkit.h"

namespace intclust {

struct SieveTermSum {
  int64_t value = 0;
  uint64_t terms = 0;  // size of the expansion, zero floors included
};

struct TermBudget {
  uint64_t max_terms = uint64_t{1} << 24;  // S(i, u) up to i = 25
};

struct FloorIdentity {
  uint64_t lhs;  // floor((n-1) / (u * prod q))
  uint64_t rhs;  // floor((n / prod q - 1) / u)
};

// Both sides of the floor identity for distinct odd primes qs dividing n and
// u coprime to each of them. Precondition violations are invalid-argument.
FloorIdentity FloorIdentitySides(uint64_t n, uint64_t u,
                                 std::span<const uint64_t> qs);

// Counts k in [1, y] free of the first a primes. Holds a reference to the
// table, which must outlive the counter. Thread-safe.
class RoughCounter {
 public:
  explicit RoughCounter(const PrimeTable& table);

  uint64_t Count(uint64_t y, size_t a) const;
  const PrimeTable& table() const { return *table_; }

 private:
  static constexpr size_t kWheelLevels = 6;  // 2*3*5*7*11*13 = 30030

  uint64_t CountRec(uint64_t y, size_t a) const;

  const PrimeTable* table_;
  std::array<uint64_t, kWheelLevels + 1> modulus_{};
  std::array<uint64_t, kWheelLevels + 1> totatives_{};
  // coprime_prefix_[a][r] = #{1 <= k <= r : gcd(k, modulus_[a]) == 1}
  std::array<std::vector<uint32_t>, kWheelLevels + 1> coprime_prefix_;
};

// |S(i, u)| by the literal alternating sum over subsets of p_1..p_{i-1}.
// Refused when 2^(i-1) exceeds the budget.
SieveTermSum SizeSExact(size_t i, uint64_t u, const PrimeTable& table,
                        const TermBudget& budget = {});

// |S(i, u)| through the pruned recurrence. i must index a tabulated prime.
uint64_t ClassSize(size_t i, uint64_t u, const RoughCounter& counter);

// Friends/enemies of odd n in the even class: enemies = phi(n)/2,
// friends = (n-1)/2 - enemies. Even n is invalid-argument.
ClassTally TallyEvenClass(const Factorization& f);

// Literal double inclusion-exclusion for class j >= 2 and odd n whose
// smallest prime exceeds p_j; j == 1 delegates to TallyEvenClass. Other
// cases are unsupported; expansions above the budget are refused.
ClassTally TallyExact(size_t j, const Factorization& f, const PrimeTable& table,
                      const TermBudget& budget = {});

// The friend count alone, with its expansion size (2^(t+j-1) - 2^(j-1)).
SieveTermSum FriendsExact(size_t j, const Factorization& f, const PrimeTable& table,
                          const TermBudget& budget = {});

// Exact tally of n against S(j, n-1) for any j and any n >= 3, using the
// recurrence. Only divisors of n above p_j enter the inclusion-exclusion.
ClassTally CanonicalTally(size_t j, const Factorization& f, const RoughCounter& counter);

// Enumerates S(j, n-1) directly: for j >= 5 through the 48 residues mod 210
// times p_j, dropping members divisible by p_5..p_{j-1}; for j < 5 by plain
// strides. Classifies each member by gcd with n.
ClassTally TallyWheelOracle(size_t j, uint64_t n, const PrimeTable& table);

// The 48 residues in [1, 210) coprime to 210, ascending.
std::span<const uint32_t> WheelResidues210();

}  // namespace intclust

#endif  // INTCLUST_EXACT_COUNTS_H_
