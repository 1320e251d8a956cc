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

#include "intclust/partition.h"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>

#include "intclust/exact_counts.h"
#include "intclust/status.h"

namespace intclust {

Partition Partition::FromLabels(std::vector<ClassId> labels) {
  Partition p;
  for (ClassId c : labels) {
    if (c == kNewClass) Fail(ErrorCode::kInvalidArgument, "class id 0 is reserved");
    ++p.sizes_[c];
  }
  p.labels_ = std::move(labels);
  return p;
}

ClassId Partition::label(uint64_t m) const {
  if (m < 2 || m > n()) {
    Fail(ErrorCode::kOutOfRange,
         std::to_string(m) + " is outside [2, " + std::to_string(n()) + "]");
  }
  return labels_[m - 2];
}

uint64_t Partition::class_size(ClassId c) const {
  auto it = sizes_.find(c);
  return it == sizes_.end() ? 0 : it->second;
}

void Partition::Append(ClassId c) {
  if (c == kNewClass) Fail(ErrorCode::kInvalidArgument, "class id 0 is reserved");
  labels_.push_back(c);
  ++sizes_[c];
}

void Partition::Move(uint64_t m, ClassId c) {
  if (c == kNewClass) Fail(ErrorCode::kInvalidArgument, "class id 0 is reserved");
  const ClassId old = label(m);
  if (old == c) return;
  if (--sizes_[old] == 0) sizes_.erase(old);
  ++sizes_[c];
  labels_[m - 2] = c;
}

std::vector<std::vector<uint64_t>> Partition::Classes() const {
  std::map<ClassId, size_t> slot;
  for (const auto& [id, size] : sizes_) slot.emplace(id, slot.size());
  std::vector<std::vector<uint64_t>> out(sizes_.size());
  for (uint64_t m = 2; m <= n(); ++m) out[slot[labels_[m - 2]]].push_back(m);
  return out;
}

bool Similar(uint64_t a, uint64_t b) {
  if (a == b) Fail(ErrorCode::kInvalidArgument, "self-pairs are not edges");
  return std::gcd(a, b) > 1;
}

Partition CanonicalPartition(uint64_t n, const PrimeTable& table) {
  if (n < 2) Fail(ErrorCode::kInvalidArgument, "partition needs n >= 2");
  if (n > table.limit()) {
    Fail(ErrorCode::kOutOfRange, "n exceeds the sieve limit");
  }
  std::vector<ClassId> labels(n - 1, kNewClass);
  ClassId index = 0;
  for (uint32_t p : table.primes()) {
    if (p > n) break;
    ++index;
    for (uint64_t m = p; m <= n; m += p) {
      if (labels[m - 2] == kNewClass) labels[m - 2] = index;
    }
  }
  return Partition::FromLabels(std::move(labels));
}

namespace {

void CheckExceptionalArgument(uint64_t n) {
  if (n % 2 == 0 || n % 3 != 0) {
    Fail(ErrorCode::kInvalidArgument,
         "exceptional partition needs n odd and divisible by 3");
  }
}

}  // namespace

Partition ExceptionalPartition(uint64_t n, const PrimeTable& table) {
  CheckExceptionalArgument(n);
  Partition p = CanonicalPartition(n, table);
  p.Move(n, 1);
  return p;
}

uint64_t ExceptionalClassSize(uint64_t n, ClassId c, const PrimeTable& table) {
  CheckExceptionalArgument(n);
  if (c == kNewClass) return 0;
  RoughCounter counter(table);
  const uint64_t canonical = ClassSize(c, n, counter);
  if (c == 1) return canonical + 1;
  if (c == 2) return canonical - 1;
  return canonical;
}

Partition SingletonPartition(uint64_t n) {
  if (n < 2) Fail(ErrorCode::kInvalidArgument, "partition needs n >= 2");
  std::vector<ClassId> labels(n - 1);
  std::iota(labels.begin(), labels.end(), ClassId{1});
  return Partition::FromLabels(std::move(labels));
}

uint64_t CountConflicts(const Partition& p, const ConflictOptions& options) {
  const uint64_t n = p.n();
  if (n > options.guard) {
    Fail(ErrorCode::kRefused,
         "conflict enumeration at n=" + std::to_string(n) +
             " exceeds the guard " + std::to_string(options.guard));
  }
  if (n < 3) return 0;
  auto labels = p.labels();
  auto count_rows = [&](uint64_t a_begin, uint64_t a_end) {
    uint64_t conflicts = 0;
    for (uint64_t a = a_begin; a < a_end; ++a) {
      const ClassId la = labels[a - 2];
      for (uint64_t b = a + 1; b <= n; ++b) {
        const bool friends = std::gcd(a, b) > 1;
        const bool same = labels[b - 2] == la;
        conflicts += friends != same;
      }
    }
    return conflicts;
  };
  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) return count_rows(2, n + 1);
  // Interleaved row blocks balance the triangular workload.
  constexpr uint64_t kBlock = 64;
  std::vector<uint64_t> partial(workers, 0);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (uint64_t a = 2 + w * kBlock; a <= n; a += workers * kBlock) {
        partial[w] += count_rows(a, std::min(a + kBlock, n + 1));
      }
    });
  }
  for (auto& t : pool) t.join();
  return std::accumulate(partial.begin(), partial.end(), uint64_t{0});
}

int64_t MoveDelta(const ClassTally& from, const ClassTally& to) {
  // K_j - K_k = (E_j - B_j) - (E_k - B_k); the other classes cancel.
  return (static_cast<int64_t>(to.enemies) - static_cast<int64_t>(to.friends)) -
         (static_cast<int64_t>(from.enemies) - static_cast<int64_t>(from.friends));
}

int64_t ConflictDeltaOfMove(const Partition& p, ClassId from, ClassId to,
                            std::span<const ClassTally> tallies) {
  const uint64_t n = p.n();
  if (n < 3) Fail(ErrorCode::kInvalidArgument, "move needs n >= 3");
  if (p.label(n) != from) {
    Fail(ErrorCode::kInvalidArgument, "n is not in the `from` class");
  }
  if (to != kNewClass && p.class_size(to) == 0) {
    Fail(ErrorCode::kInvalidArgument, "target class " + std::to_string(to) + " does not exist");
  }
  std::map<ClassId, const ClassTally*> by_id;
  uint64_t covered = 0;
  for (const auto& t : tallies) {
    if (t.n != n) Fail(ErrorCode::kInconsistent, "tally for a different probe");
    if (!by_id.emplace(t.j, &t).second) {
      Fail(ErrorCode::kInconsistent, "duplicate tally for class " + std::to_string(t.j));
    }
    const uint64_t expected = p.class_size(t.j) - (t.j == from ? 1 : 0);
    if (t.total() != expected) {
      Fail(ErrorCode::kInconsistent,
           "stale tally for class " + std::to_string(t.j));
    }
    covered += t.total();
  }
  for (const auto& [id, size] : p.class_sizes()) {
    if (!by_id.contains(id) && !(id == from && size == 1)) {
      Fail(ErrorCode::kInconsistent, "missing tally for class " + std::to_string(id));
    }
  }
  if (covered != n - 2) {
    Fail(ErrorCode::kInconsistent, "tallies do not cover [2, n-1]");
  }
  if (from == to) return 0;
  const ClassTally empty{to, n, 0, 0};
  const ClassTally empty_from{from, n, 0, 0};
  auto lookup = [&](ClassId c, const ClassTally& fallback) -> const ClassTally& {
    auto it = by_id.find(c);
    return it == by_id.end() ? fallback : *it->second;
  };
  return MoveDelta(lookup(from, empty_from), lookup(to, empty));
}

std::vector<ClassTally> ScanTallies(const Partition& p, uint64_t n) {
  if (n < 3 || n > p.n() + 1) {
    Fail(ErrorCode::kInvalidArgument, "probe must satisfy 3 <= n <= p.n() + 1");
  }
  std::map<ClassId, ClassTally> by_id;
  const auto labels = p.labels();
  for (uint64_t m = 2; m < n; ++m) {
    const ClassId c = labels[m - 2];
    auto [it, fresh] = by_id.try_emplace(c, ClassTally{c, n, 0, 0});
    if (std::gcd(m, n) > 1) {
      ++it->second.friends;
    } else {
      ++it->second.enemies;
    }
  }
  std::vector<ClassTally> out;
  out.reserve(by_id.size());
  for (const auto& [id, t] : by_id) out.push_back(t);
  return out;
}

void WritePartitionCsv(const Partition& p, std::ostream& out) {
  out << "integer,class\n";
  std::string row;
  for (uint64_t m = 2; m <= p.n(); ++m) {
    row.clear();
    row += std::to_string(m);
    row += ',';
    row += std::to_string(p.labels()[m - 2]);
    row += '\n';
    out << row;
  }
}

Partition ReadPartitionCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorCode::kInvalidArgument, "empty partition CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "integer,class") {
    Fail(ErrorCode::kInvalidArgument, "partition CSV header must be integer,class");
  }
  std::vector<ClassId> labels;
  uint64_t expected = 2;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      Fail(ErrorCode::kInvalidArgument, "malformed CSV row: " + line);
    }
    uint64_t m = 0;
    unsigned long long c = 0;
    try {
      m = std::stoull(line.substr(0, comma));
      c = std::stoull(line.substr(comma + 1));
    } catch (const std::exception&) {
      Fail(ErrorCode::kInvalidArgument, "malformed CSV row: " + line);
    }
    if (m != expected) {
      Fail(ErrorCode::kInvalidArgument, "rows must list 2, 3, ... in order");
    }
    if (c == 0 || c > UINT32_MAX) {
      Fail(ErrorCode::kInvalidArgument, "class id out of range: " + line);
    }
    labels.push_back(static_cast<ClassId>(c));
    ++expected;
  }
  if (labels.empty()) Fail(ErrorCode::kInvalidArgument, "partition CSV has no rows");
  return Partition::FromLabels(std::move(labels));
}

}  // namespace intclust
