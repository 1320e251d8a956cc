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

// Slow, obviously-correct reference computations for tests. Nothing here
// calls into the library.

#ifndef INTCLUST_TESTS_ORACLES_H_
#define INTCLUST_TESTS_ORACLES_H_

#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

// spf[m] = smallest prime factor of m, for 2 <= m <= limit.
inline std::vector<uint32_t> SmallestFactors(uint32_t limit) {
  std::vector<uint32_t> spf(limit + 1, 0);
  for (uint32_t m = 2; m <= limit; ++m) {
    if (spf[m] != 0) continue;
    for (uint64_t k = m; k <= limit; k += m) {
      if (spf[k] == 0) spf[k] = m;
    }
  }
  return spf;
}

inline std::vector<uint32_t> Primes(uint32_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<uint32_t> out;
  for (uint32_t m = 2; m <= limit; ++m) {
    if (composite[m]) continue;
    out.push_back(m);
    for (uint64_t k = uint64_t{m} * m; k <= limit; k += m) composite[k] = true;
  }
  return out;
}

inline uint64_t CountCoprimeBelow(uint64_t n) {
  uint64_t c = 0;
  for (uint64_t m = 1; m < n; ++m) c += std::gcd(m, n) == 1;
  return c;
}

// Friends and enemies of n among members m < n of the class with smallest
// prime p.
inline std::pair<uint64_t, uint64_t> CanonicalTallyByScan(uint64_t n, uint32_t p,
                                                          const std::vector<uint32_t>& spf) {
  uint64_t friends = 0;
  uint64_t enemies = 0;
  for (uint64_t m = p; m < n; m += p) {
    if (spf[m] != p) continue;
    if (std::gcd(m, n) > 1) {
      ++friends;
    } else {
      ++enemies;
    }
  }
  return {friends, enemies};
}

// labels[k] is the class of k + 2.
inline uint64_t Conflicts(const std::vector<uint32_t>& labels) {
  uint64_t c = 0;
  for (size_t a = 0; a < labels.size(); ++a) {
    for (size_t b = a + 1; b < labels.size(); ++b) {
      const bool friends = std::gcd(a + 2, b + 2) > 1;
      c += friends != (labels[a] == labels[b]);
    }
  }
  return c;
}

// Greedy clustering where each candidate placement of n is priced by its
// conflicts with every earlier integer, recomputed from gcds. Classes are
// numbered in order of creation. Among equally cheap placements a new class
// wins, then the earliest class.
inline std::vector<uint32_t> Greedy(uint64_t n) {
  std::vector<uint32_t> labels = {1};
  uint32_t classes = 1;
  for (uint64_t x = 3; x <= n; ++x) {
    std::map<uint32_t, std::pair<uint64_t, uint64_t>> tally;  // friends, enemies
    uint64_t all_friends = 0;
    for (uint64_t m = 2; m < x; ++m) {
      auto& t = tally[labels[m - 2]];
      if (std::gcd(m, x) > 1) {
        ++t.first;
        ++all_friends;
      } else {
        ++t.second;
      }
    }
    uint64_t best_cost = all_friends;  // new class
    uint32_t best = 0;
    for (uint32_t c = 1; c <= classes; ++c) {
      const auto& [f, e] = tally[c];
      const uint64_t cost = all_friends - f + e;
      if (cost < best_cost) {
        best_cost = cost;
        best = c;
      }
    }
    if (best == 0) best = ++classes;
    labels.push_back(best);
  }
  return labels;
}

}  // namespace oracle

#endif  // INTCLUST_TESTS_ORACLES_H_
