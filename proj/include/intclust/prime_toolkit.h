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

// Prime generation, factorization, Euler's totient, exact prime counting and
// the Rosser-Schoenfeld bracket for pi(x).

#ifndef INTCLUST_PRIME_TOOLKIT_H_
#define INTCLUST_PRIME_TOOLKIT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace intclust {

inline constexpr uint64_t kN0 = 111546435;  // 3*5*7*11*13*17*19*23
inline constexpr uint64_t kDefaultSieveLimit = 200000000;
inline constexpr uint64_t kMaxSieveLimit = 4000000000ULL;

// All primes up to `limit`, with O(1) primality and prime-counting queries.
// Immutable once built; safe to share between threads.
//
// Indexing follows the usual p_1 = 2, p_2 = 3, ... convention: prime(1) == 2.
class PrimeTable {
 public:
  // Sieves [2, limit]. limit < 2 or above kMaxSieveLimit is invalid-argument.
  explicit PrimeTable(uint64_t limit);

  // Rebuilds the table from a previously sieved prime list (see cache I/O).
  // The list is trusted to be exactly the primes <= limit.
  static PrimeTable FromPrimes(uint64_t limit, std::vector<uint32_t> primes);

  uint64_t limit() const { return limit_; }
  size_t size() const { return primes_.size(); }
  std::span<const uint32_t> primes() const { return primes_; }

  // The i-th prime, 1-based. Out-of-range when i is 0 or beyond the table.
  uint64_t prime(size_t i) const;

  // Primality of m <= limit.
  bool is_prime(uint64_t m) const;

  // Exact pi(x) for x <= limit; out-of-range otherwise.
  uint64_t pi(uint64_t x) const;

  // 1-based index i with prime(i) == p. invalid-argument if p is not prime.
  size_t index_of(uint64_t p) const;

 private:
  PrimeTable() = default;
  void BuildIndex();

  uint64_t limit_ = 0;
  std::vector<uint32_t> primes_;
  // Bit k set iff 2k+1 is prime.
  std::vector<uint64_t> odd_bits_;
  // Number of odd primes strictly below word w's first odd number.
  std::vector<uint32_t> word_rank_;
};

struct PrimePower {
  uint64_t prime;
  uint32_t exponent;

  bool operator==(const PrimePower&) const = default;
};

// n = prod q^alpha over `factors`, primes strictly increasing.
struct Factorization {
  uint64_t n = 1;
  std::vector<PrimePower> factors;

  size_t distinct() const { return factors.size(); }
  uint64_t smallest_prime() const { return factors.front().prime; }
  uint64_t kernel() const;  // product of the distinct primes
  uint64_t Product() const;
  bool operator==(const Factorization&) const = default;
};

// Trial division by table primes, stopping early once the cofactor is a
// tabulated prime. Needs either limit >= sqrt(n) or a cofactor that drops
// into the table; otherwise out-of-range. n < 2 is invalid-argument.
Factorization Factorize(uint64_t n, const PrimeTable& table);

// phi(n) = prod q^(alpha-1) (q-1), evaluated in integer arithmetic.
uint64_t Totient(const Factorization& f);

struct PiBounds {
  double lower;
  double upper;
};

// (x/log x)(1 + 1/(2 log x)) < pi(x) < (x/log x)(1 + 3/(2 log x)), x >= 59.
PiBounds RosserSchoenfeldBounds(double x);

// Sieve cache: version byte, little-endian u64 limit, u64 count, then count
// little-endian u32 primes.
inline constexpr uint8_t kSieveCacheVersion = 1;
void WriteSieveCache(const PrimeTable& table, const std::string& path);
PrimeTable ReadSieveCache(const std::string& path);

// Loads `path` when it holds a table with limit >= `limit`, otherwise sieves
// and (re)writes the cache. An empty path just sieves.
PrimeTable LoadOrBuildPrimeTable(uint64_t limit, const std::string& path);

uint64_t ISqrt(uint64_t x);

}  // namespace intclust

#endif  // INTCLUST_PRIME_TOOLKIT_H_
