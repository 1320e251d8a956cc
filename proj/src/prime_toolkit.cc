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

#include "intclust/prime_toolkit.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>

#include "intclust/rational.h"
#include "intclust/status.h"

namespace intclust {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kOutOfDomain: return "out-of-domain";
    case ErrorCode::kRefused: return "refused";
    case ErrorCode::kInconsistent: return "inconsistent";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

std::string ToString(int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  uint128 u = neg ? static_cast<uint128>(-(v + 1)) + 1 : static_cast<uint128>(v);
  std::string s;
  while (u != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

std::string Rational::ToString() const {
  if (den_ == 1) return intclust::ToString(num_);
  return intclust::ToString(num_) + "/" + intclust::ToString(den_);
}

uint64_t ISqrt(uint64_t x) {
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && static_cast<uint128>(r) * r > x) --r;
  while (static_cast<uint128>(r + 1) * (r + 1) <= x) ++r;
  return r;
}

namespace {

// Odd-only segmented sieve of Eratosthenes. Fills `bits` (bit k <=> 2k+1
// prime) and `primes`.
void SegmentedSieve(uint64_t limit, std::vector<uint64_t>& bits,
                    std::vector<uint32_t>& primes) {
  const uint64_t odd_count = limit / 2 + 1;  // odd numbers 1,3,..,<=limit(+1)
  bits.assign((odd_count + 63) / 64, 0);
  primes.clear();
  primes.push_back(2);

  const uint64_t root = ISqrt(limit);
  std::vector<uint8_t> small(root + 1, 1);
  std::vector<uint32_t> base;
  for (uint64_t p = 3; p <= root; p += 2) {
    if (!small[p]) continue;
    base.push_back(static_cast<uint32_t>(p));
    for (uint64_t m = p * p; m <= root; m += 2 * p) small[m] = 0;
  }

  constexpr uint64_t kSegment = uint64_t{1} << 18;  // odd numbers per segment
  std::vector<uint8_t> seg(kSegment);
  std::vector<uint64_t> next(base.size());
  for (size_t k = 0; k < base.size(); ++k) {
    next[k] = (uint64_t{base[k]} * base[k]) / 2;  // odd index of p^2
  }
  for (uint64_t lo = 0; lo < odd_count; lo += kSegment) {
    const uint64_t hi = std::min(lo + kSegment, odd_count);
    std::fill(seg.begin(), seg.begin() + (hi - lo), 1);
    for (size_t k = 0; k < base.size(); ++k) {
      uint64_t j = next[k];
      const uint64_t p = base[k];
      for (; j < hi; j += p) seg[j - lo] = 0;
      next[k] = j;
    }
    for (uint64_t idx = lo; idx < hi; ++idx) {
      if (!seg[idx - lo] || idx == 0) continue;
      const uint64_t m = 2 * idx + 1;
      if (m > limit) break;
      bits[idx >> 6] |= uint64_t{1} << (idx & 63);
      primes.push_back(static_cast<uint32_t>(m));
    }
  }
}

}  // namespace

PrimeTable::PrimeTable(uint64_t limit) : limit_(limit) {
  if (limit < 2) {
    Fail(ErrorCode::kInvalidArgument, "sieve limit must be at least 2");
  }
  if (limit > kMaxSieveLimit) {
    Fail(ErrorCode::kInvalidArgument, "sieve limit exceeds 32-bit primes");
  }
  SegmentedSieve(limit, odd_bits_, primes_);
  BuildIndex();
}

PrimeTable PrimeTable::FromPrimes(uint64_t limit, std::vector<uint32_t> primes) {
  if (limit < 2 || limit > kMaxSieveLimit) {
    Fail(ErrorCode::kInvalidArgument, "bad sieve limit in prime list");
  }
  PrimeTable t;
  t.limit_ = limit;
  t.primes_ = std::move(primes);
  t.odd_bits_.assign((limit / 2 + 1 + 63) / 64, 0);
  for (uint32_t p : t.primes_) {
    if (p > limit) Fail(ErrorCode::kInconsistent, "prime above limit");
    if (p == 2) continue;
    const uint64_t idx = p / 2;
    t.odd_bits_[idx >> 6] |= uint64_t{1} << (idx & 63);
  }
  t.BuildIndex();
  return t;
}

void PrimeTable::BuildIndex() {
  word_rank_.resize(odd_bits_.size());
  uint32_t acc = 0;
  for (size_t w = 0; w < odd_bits_.size(); ++w) {
    word_rank_[w] = acc;
    acc += static_cast<uint32_t>(std::popcount(odd_bits_[w]));
  }
}

uint64_t PrimeTable::prime(size_t i) const {
  if (i == 0 || i > primes_.size()) {
    Fail(ErrorCode::kOutOfRange,
         "prime index " + std::to_string(i) + " outside the table");
  }
  return primes_[i - 1];
}

bool PrimeTable::is_prime(uint64_t m) const {
  if (m > limit_) {
    Fail(ErrorCode::kOutOfRange,
         std::to_string(m) + " exceeds the sieve limit " + std::to_string(limit_));
  }
  if (m == 2) return true;
  if (m < 2 || m % 2 == 0) return false;
  const uint64_t idx = m / 2;
  return (odd_bits_[idx >> 6] >> (idx & 63)) & 1;
}

uint64_t PrimeTable::pi(uint64_t x) const {
  if (x > limit_) {
    Fail(ErrorCode::kOutOfRange,
         "pi(" + std::to_string(x) + ") beyond sieve limit " + std::to_string(limit_));
  }
  if (x < 2) return 0;
  // Odd primes <= x are the set bits with index <= (x-1)/2.
  const uint64_t idx = (x - 1) / 2;
  const uint64_t w = idx >> 6;
  const unsigned b = static_cast<unsigned>(idx & 63);
  const uint64_t mask = b == 63 ? ~uint64_t{0} : ((uint64_t{1} << (b + 1)) - 1);
  return 1 + word_rank_[w] + std::popcount(odd_bits_[w] & mask);
}

size_t PrimeTable::index_of(uint64_t p) const {
  if (!is_prime(p)) {
    Fail(ErrorCode::kInvalidArgument, std::to_string(p) + " is not prime");
  }
  return pi(p);
}

uint64_t Factorization::kernel() const {
  uint64_t k = 1;
  for (const auto& f : factors) k *= f.prime;
  return k;
}

uint64_t Factorization::Product() const {
  uint128 v = 1;
  for (const auto& f : factors) {
    for (uint32_t e = 0; e < f.exponent; ++e) {
      v *= f.prime;
      if (v > UINT64_MAX) Fail(ErrorCode::kOutOfRange, "product overflow");
    }
  }
  return static_cast<uint64_t>(v);
}

Factorization Factorize(uint64_t n, const PrimeTable& table) {
  if (n < 2) Fail(ErrorCode::kInvalidArgument, "factorize needs n >= 2");
  Factorization f;
  f.n = n;
  uint64_t rest = n;
  for (uint32_t p : table.primes()) {
    if (rest <= table.limit() && table.is_prime(rest)) break;
    if (uint64_t{p} * p > rest) break;
    if (rest % p != 0) continue;
    uint32_t e = 0;
    do {
      rest /= p;
      ++e;
    } while (rest % p == 0);
    f.factors.push_back({p, e});
    if (rest == 1) break;
  }
  if (rest > 1) {
    const bool known_prime = rest <= table.limit()
                                 ? table.is_prime(rest)
                                 : uint128{table.limit()} * table.limit() >= rest;
    if (!known_prime) {
      Fail(ErrorCode::kOutOfRange,
           "cannot complete factorization of " + std::to_string(n) +
               " with sieve limit " + std::to_string(table.limit()));
    }
    f.factors.push_back({rest, 1});
  }
  return f;
}

uint64_t Totient(const Factorization& f) {
  uint64_t phi = f.n;
  for (const auto& pp : f.factors) phi = phi / pp.prime * (pp.prime - 1);
  return phi;
}

PiBounds RosserSchoenfeldBounds(double x) {
  if (!(x >= 59.0)) {
    Fail(ErrorCode::kOutOfDomain, "Rosser-Schoenfeld bounds need x >= 59");
  }
  const double l = std::log(x);
  const double base = x / l;
  return {base * (1.0 + 1.0 / (2.0 * l)), base * (1.0 + 3.0 / (2.0 * l))};
}

namespace {

template <typename T>
void PutLe(std::ostream& out, T v) {
  for (size_t k = 0; k < sizeof(T); ++k) {
    out.put(static_cast<char>((static_cast<uint64_t>(v) >> (8 * k)) & 0xff));
  }
}

template <typename T>
T GetLe(std::istream& in) {
  uint64_t v = 0;
  for (size_t k = 0; k < sizeof(T); ++k) {
    int c = in.get();
    if (c == EOF) Fail(ErrorCode::kIo, "truncated sieve cache");
    v |= static_cast<uint64_t>(static_cast<uint8_t>(c)) << (8 * k);
  }
  return static_cast<T>(v);
}

}  // namespace

void WriteSieveCache(const PrimeTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  out.put(static_cast<char>(kSieveCacheVersion));
  PutLe<uint64_t>(out, table.limit());
  PutLe<uint64_t>(out, table.size());
  std::vector<char> buf;
  buf.reserve(table.size() * 4);
  for (uint32_t p : table.primes()) {
    for (int k = 0; k < 4; ++k) buf.push_back(static_cast<char>((p >> (8 * k)) & 0xff));
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) Fail(ErrorCode::kIo, "failed writing " + path);
}

PrimeTable ReadSieveCache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path);
  const int version = in.get();
  if (version != kSieveCacheVersion) {
    Fail(ErrorCode::kIo, "unsupported sieve cache version in " + path);
  }
  const auto limit = GetLe<uint64_t>(in);
  const auto count = GetLe<uint64_t>(in);
  if (limit < 2 || limit > kMaxSieveLimit || count > limit) {
    Fail(ErrorCode::kIo, "corrupt sieve cache header in " + path);
  }
  std::vector<char> raw(count * 4);
  in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (static_cast<uint64_t>(in.gcount()) != raw.size()) {
    Fail(ErrorCode::kIo, "truncated sieve cache " + path);
  }
  std::vector<uint32_t> primes(count);
  for (uint64_t k = 0; k < count; ++k) {
    uint32_t p = 0;
    for (int b = 0; b < 4; ++b) {
      p |= static_cast<uint32_t>(static_cast<uint8_t>(raw[4 * k + b])) << (8 * b);
    }
    primes[k] = p;
  }
  if (!std::is_sorted(primes.begin(), primes.end()) ||
      (!primes.empty() && primes.back() > limit)) {
    Fail(ErrorCode::kIo, "corrupt prime list in " + path);
  }
  return PrimeTable::FromPrimes(limit, std::move(primes));
}

PrimeTable LoadOrBuildPrimeTable(uint64_t limit, const std::string& path) {
  if (path.empty()) return PrimeTable(limit);
  {
    std::ifstream probe(path, std::ios::binary);
    if (probe) {
      try {
        PrimeTable cached = ReadSieveCache(path);
        if (cached.limit() >= limit) return cached;
      } catch (const Error&) {
        // Unreadable cache: rebuild below.
      }
    }
  }
  PrimeTable table(limit);
  WriteSieveCache(table, path);
  return table;
}

}  // namespace intclust
