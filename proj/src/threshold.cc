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

#include "intclust/threshold.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "intclust/status.h"

namespace intclust {

bool EvenClassBeatsClassTwo(const Factorization& f) {
  if (f.factors.empty() || f.smallest_prime() != 3) {
    Fail(ErrorCode::kInvalidArgument, "inequality needs an odd n divisible by 3");
  }
  uint128 num = 1;
  uint128 den = 1;
  for (size_t k = 1; k < f.factors.size(); ++k) {
    num *= f.factors[k].prime - 1;
    den *= f.factors[k].prime;
  }
  return 2 * num < den;
}

namespace {

struct KernelSearch {
  const PrimeTable& table;
  uint64_t bound;
  uint64_t best = 0;  // 0 until something qualifies

  // Can appending the consecutive primes p_k, p_k+1, ... to the kernel
  // (product, num/den) push the ratio under 1/2 within the bound?
  bool Reachable(uint64_t product, uint64_t num, uint64_t den, size_t k) const {
    for (;; ++k) {
      const uint64_t q = table.prime(k);
      if (product > bound / q) return false;
      product *= q;
      num *= q - 1;
      den *= q;
      if (2 * static_cast<uint128>(num) < den) return true;
    }
  }

  void Visit(uint64_t product, uint64_t num, uint64_t den, size_t k) {
    for (;; ++k) {
      const uint64_t q = table.prime(k);
      if (product > bound / q) return;
      const uint64_t next = product * q;
      if (best != 0 && next >= best) return;
      // Later q only make the reachable ratio worse.
      if (!Reachable(product, num, den, k)) return;
      if (2 * static_cast<uint128>(num) * (q - 1) < static_cast<uint128>(den) * q) {
        best = next;
        return;
      }
      Visit(next, num * (q - 1), den * q, k + 1);
    }
  }
};

}  // namespace

std::optional<uint64_t> FindN0(uint64_t bound, const PrimeTable& table) {
  if (bound < 3) return std::nullopt;
  KernelSearch search{table, bound};
  search.Visit(3, 1, 1, 3);
  if (search.best == 0) return std::nullopt;
  return search.best;
}

CoprimeCandidate CoprimeToThreeCandidate() {
  constexpr uint64_t kPrimes[] = {7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
  CoprimeCandidate out{5, false, false};
  uint128 num = 1;
  uint128 den = 1;
  for (uint64_t q : kPrimes) {
    if (q == 43) out.holds_without_last = 24 * num < 13 * den;
    out.value *= q;
    num *= q - 1;
    den *= q;
  }
  out.holds = 24 * num < 13 * den;
  return out;
}

namespace {

// (1/p_m) prod_{l<m} (1 - 1/p_l).
Rational SmallestFactorDensity(size_t m, const PrimeTable& table) {
  Rational r(1);
  for (size_t l = 1; l < m; ++l) {
    const int128 p = table.prime(l);
    r = r * Rational(p - 1, p);
  }
  return r * Rational(1, table.prime(m));
}

}  // namespace

ThresholdRecord N1Value(size_t i, size_t j, size_t t, const PrimeTable& table) {
  if (i < 3 || j < 1 || j >= i || t < 1) {
    Fail(ErrorCode::kInvalidArgument, "n1 needs 3 <= i, 1 <= j < i, t >= 1");
  }
  if (t + j - 2 >= 120 || i - 2 >= 120) {
    Fail(ErrorCode::kOutOfRange, "exponent too large for 128-bit arithmetic");
  }
  ThresholdRecord rec;
  rec.i = i;
  rec.j = j;
  rec.t = t;
  rec.p_i = table.prime(i);
  Rational q_product(1);
  uint128 product = 1;
  for (size_t k = 0; k < t; ++k) {
    const uint64_t q = table.prime(i + k);
    q_product = q_product * Rational(q - 1, q);
    if (product > std::numeric_limits<uint128>::max() / q) {
      Fail(ErrorCode::kOutOfRange, "prime product exceeds 128 bits");
    }
    product *= q;
  }
  rec.product = product;
  const Rational a_i = SmallestFactorDensity(i, table);
  const Rational a_j = SmallestFactorDensity(j, table);
  rec.threshold = a_i + a_j * (Rational(2) * q_product - Rational(1));
  if (rec.threshold.num() <= 0) {
    Fail(ErrorCode::kDegenerate, "threshold T <= 0 at (" + std::to_string(i) + "," +
                                     std::to_string(j) + "," + std::to_string(t) + ")");
  }
  const int128 x = (int128{1} << (t + j - 2)) + (int128{1} << (i - 2));
  const int128 n1 = (Rational(x) / rec.threshold).Floor();
  if (n1 < 1 || n1 > static_cast<int128>(std::numeric_limits<uint64_t>::max())) {
    Fail(ErrorCode::kOutOfRange, "n1 does not fit 64 bits");
  }
  rec.n1 = static_cast<uint64_t>(n1);
  rec.bound_covers_all = rec.n1 <= product;
  return rec;
}

size_t MaxFactorCount(size_t i, const PrimeTable& table) {
  size_t t = 0;
  uint64_t product = 1;
  for (size_t k = i;; ++k) {
    const uint64_t q = table.prime(k);
    if (product > kN0 / q) return t;
    product *= q;
    ++t;
  }
}

std::vector<ThresholdRecord> N1Column(size_t i, const PrimeTable& table) {
  std::vector<ThresholdRecord> out;
  const size_t t_max = MaxFactorCount(i, table);
  for (size_t t = 1; t <= t_max; ++t) out.push_back(N1Value(i, i - 1, t, table));
  return out;
}

std::vector<ThresholdRecord> DisplayedN1Table(const PrimeTable& table) {
  std::vector<ThresholdRecord> out;
  for (size_t i = 3; i <= 19; ++i) {
    for (auto& rec : N1Column(i, table)) {
      if (rec.n1 <= kN0) out.push_back(rec);
    }
  }
  return out;
}

const char* CensusReadingName(CensusReading reading) {
  switch (reading) {
    case CensusReading::kSquarefree: return "squarefree";
    case CensusReading::kExactlyThree: return "exactly-three";
    case CensusReading::kAtLeastThree: return "at-least-three";
  }
  return "unknown";
}

std::optional<CensusReading> ParseCensusReading(std::string_view name) {
  for (auto r : {CensusReading::kSquarefree, CensusReading::kExactlyThree,
                 CensusReading::kAtLeastThree}) {
    if (name == CensusReadingName(r)) return r;
  }
  return std::nullopt;
}

namespace {

class CensusWalk {
 public:
  CensusWalk(const PrimeTable& table, uint64_t bound, CensusReading reading,
             std::vector<uint64_t>* list)
      : table_(table), bound_(bound), reading_(reading), list_(list) {}

  uint64_t Run(uint64_t p) {
    const size_t k = table_.index_of(p);
    uint64_t total = 0;
    for (uint64_t m = p; m <= (bound_ - 1); m *= p) {
      total += Extend(m, k + 1, 1);
      if (reading_ == CensusReading::kSquarefree || m > (bound_ - 1) / p) break;
    }
    return total;
  }

 private:
  bool Counts(unsigned omega) const {
    return reading_ == CensusReading::kAtLeastThree ? omega >= 3 : omega == 3;
  }
  bool CanGrow(unsigned omega) const {
    return reading_ == CensusReading::kAtLeastThree || omega < 3;
  }

  uint64_t Extend(uint64_t m, size_t k, unsigned omega) {
    const uint64_t lim = (bound_ - 1) / m;
    uint64_t total = 0;
    for (;; ++k) {
      if (k > table_.size()) break;
      const uint64_t r = table_.prime(k);
      if (r > lim) break;
      if (r > lim / r) {
        // m * r is the only multiple left for every remaining prime r.
        if (!Counts(omega + 1)) break;
        if (list_ == nullptr) {
          total += table_.pi(lim) - (k - 1);
          break;
        }
      }
      for (uint64_t mm = m * r;; mm *= r) {
        if (Counts(omega + 1)) {
          ++total;
          if (list_ != nullptr) list_->push_back(mm);
        }
        if (CanGrow(omega + 1)) total += Extend(mm, k + 1, omega + 1);
        if (reading_ == CensusReading::kSquarefree || mm > (bound_ - 1) / r) break;
      }
    }
    return total;
  }

  const PrimeTable& table_;
  uint64_t bound_;
  CensusReading reading_;
  std::vector<uint64_t>* list_;
};

void CheckCensusArgs(uint64_t p, uint64_t bound, const PrimeTable& table) {
  if (p < 2 || p > table.limit() || !table.is_prime(p)) {
    Fail(ErrorCode::kInvalidArgument, std::to_string(p) + " is not a tabulated prime");
  }
  if (bound < 2 || bound - 1 > table.limit()) {
    Fail(ErrorCode::kOutOfRange, "census bound exceeds the sieve limit");
  }
}

}  // namespace

CandidateCensus CensusThreeFactor(uint64_t p, uint64_t bound, const PrimeTable& table,
                                  CensusReading reading) {
  CheckCensusArgs(p, bound, table);
  CensusWalk walk(table, bound, reading, nullptr);
  return {p, bound, walk.Run(p), reading};
}

std::vector<uint64_t> ListCandidates(uint64_t p, uint64_t bound, const PrimeTable& table,
                                     CensusReading reading) {
  CheckCensusArgs(p, bound, table);
  std::vector<uint64_t> out;
  CensusWalk walk(table, bound, reading, &out);
  walk.Run(p);
  std::sort(out.begin(), out.end());
  return out;
}

uint64_t DefaultCensusBound(uint64_t p, const PrimeTable& table) {
  const size_t i = table.index_of(p);
  if (i >= 3 && i <= 19 && MaxFactorCount(i, table) >= 3) {
    const uint64_t n1 = N1Value(i, i - 1, 3, table).n1;
    if (n1 <= kN0) return n1;
  }
  return kN0;
}

std::vector<PrimeCountPoint> CheckPrimeCountInequality(const std::vector<double>& xs,
                                     const std::vector<double>& ts,
                                     const PrimeTable& table) {
  std::vector<PrimeCountPoint> out;
  // Below 59 the bounds are replaced by 0 <= pi(y) <= y.
  auto bounds = [](double y) -> PiBounds {
    if (y >= 59.0) return RosserSchoenfeldBounds(y);
    return {0.0, y};
  };
  for (double x : xs) {
    if (!(x >= 1.0) || !std::isfinite(x)) {
      Fail(ErrorCode::kInvalidArgument, "prime count check needs finite x >= 1");
    }
    for (double t : ts) {
      if (!(t >= 1.0) || !std::isfinite(t)) {
        Fail(ErrorCode::kInvalidArgument, "prime count check needs finite t >= 1");
      }
      PrimeCountPoint pt;
      pt.x = x;
      pt.t = t;
      const uint64_t fx = static_cast<uint64_t>(std::floor(x));
      const uint64_t root = ISqrt(fx);
      const uint64_t fxt = static_cast<uint64_t>(std::floor(x / t));
      const PiBounds bx = bounds(x);
      const PiBounds broot = bounds(std::sqrt(x));
      const PiBounds bxt = bounds(x / t);
      pt.bound_lhs = bx.lower - broot.upper;
      pt.bound_rhs = 18.0 * bxt.upper + 56.0;
      pt.bounds_hold = pt.bound_lhs > pt.bound_rhs;
      pt.exact = fx <= table.limit();
      if (pt.exact) {
        const auto px = static_cast<double>(table.pi(fx));
        const auto proot = static_cast<double>(table.pi(root));
        const auto pxt = static_cast<double>(table.pi(fxt));
        pt.lhs = static_cast<int64_t>(table.pi(fx)) - static_cast<int64_t>(table.pi(root));
        pt.rhs = 18 * static_cast<int64_t>(table.pi(fxt)) + 56;
        pt.holds = pt.lhs > pt.rhs;
        pt.bounds_bracket = bx.lower <= px && px <= bx.upper && broot.lower <= proot &&
                            proot <= broot.upper && bxt.lower <= pxt && pxt <= bxt.upper;
      } else {
        pt.holds = pt.bounds_hold;
      }
      out.push_back(pt);
    }
  }
  return out;
}

LargeClassBounds LargeClassCensus(uint64_t n, size_t ell, const PrimeTable& table) {
  if (n < 2 || n >= kN0) Fail(ErrorCode::kInvalidArgument, "need 2 <= n < n0");
  const Factorization f = Factorize(n, table);
  const uint64_t q1 = f.smallest_prime();
  if (q1 < 41) Fail(ErrorCode::kInvalidArgument, "smallest prime factor must be >= 41");
  const uint64_t p_ell = table.prime(ell);
  if (p_ell < 37 || p_ell >= q1) {
    Fail(ErrorCode::kInvalidArgument, "need 37 <= p_l < smallest prime factor");
  }
  unsigned big_omega = 0;
  for (const auto& pp : f.factors) big_omega += pp.exponent;
  if (big_omega > 4) Fail(ErrorCode::kInvalidArgument, "more than four prime factors");
  LargeClassBounds out;
  out.friends_bound = 52 + 18 * table.pi(kN0 / (p_ell * q1));
  out.enemies_bound = static_cast<int64_t>(table.pi(kN0 / p_ell)) -
                      static_cast<int64_t>(table.pi(p_ell)) - 4;
  if (static_cast<uint128>(p_ell) * p_ell * p_ell > kN0 && big_omega == 2) {
    out.two_factor_case = true;
    out.friends_bound = 2;
  }
  return out;
}

}  // namespace intclust
