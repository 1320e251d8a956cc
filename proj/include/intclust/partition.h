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

// Clusterings of [2, n] under the gcd friend/enemy rule.
//
// Two distinct integers are friends when they share a prime factor and
// enemies otherwise. A pair is a conflict when it is an enemy pair inside one
// class or a friend pair split across classes.

#ifndef INTCLUST_PARTITION_H_
#define INTCLUST_PARTITION_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "intclust/prime_toolkit.h"

namespace intclust {

using ClassId = uint32_t;

// Id 0 never labels an integer; it names the empty class a new integer may
// open.
inline constexpr ClassId kNewClass = 0;

// Friend/enemy counts of probe n inside one class (n itself excluded).
struct ClassTally {
  ClassId j = 0;
  uint64_t n = 0;
  uint64_t friends = 0;
  uint64_t enemies = 0;

  int64_t balance() const {
    return static_cast<int64_t>(friends) - static_cast<int64_t>(enemies);
  }
  uint64_t total() const { return friends + enemies; }
  bool operator==(const ClassTally&) const = default;
};

class Partition {
 public:
  // The empty partition of [2, 1].
  Partition() = default;

  // labels[k] is the class of integer k + 2. Every label must be nonzero.
  static Partition FromLabels(std::vector<ClassId> labels);

  uint64_t n() const { return labels_.size() + 1; }
  bool empty() const { return labels_.empty(); }
  ClassId label(uint64_t m) const;
  std::span<const ClassId> labels() const { return labels_; }
  const std::map<ClassId, uint64_t>& class_sizes() const { return sizes_; }
  size_t class_count() const { return sizes_.size(); }
  uint64_t class_size(ClassId c) const;

  // Smallest id larger than every id in use.
  ClassId next_id() const { return sizes_.empty() ? 1 : sizes_.rbegin()->first + 1; }

  // Adjoins n() + 1 to class c (nonzero; may be a fresh id).
  void Append(ClassId c);

  // Moves m to class c (nonzero; may be a fresh id). Empty classes vanish.
  void Move(uint64_t m, ClassId c);

  // Members of each class in ascending order, classes in ascending id order.
  std::vector<std::vector<uint64_t>> Classes() const;

  bool operator==(const Partition& o) const { return labels_ == o.labels_; }

 private:
  std::vector<ClassId> labels_;
  std::map<ClassId, uint64_t> sizes_;
};

// gcd(a, b) > 1. a == b is not an edge and is invalid-argument.
bool Similar(uint64_t a, uint64_t b);

// The smallest-prime-factor clustering: m lands in class i when its smallest
// prime factor is the i-th prime. Needs n <= table.limit().
Partition CanonicalPartition(uint64_t n, const PrimeTable& table);

// The canonical partition with n moved from class 2 to class 1. n must be odd
// and divisible by 3.
Partition ExceptionalPartition(uint64_t n, const PrimeTable& table);

// Size of class `c` in ExceptionalPartition(n) without materializing it.
uint64_t ExceptionalClassSize(uint64_t n, ClassId c, const PrimeTable& table);

// Every integer of [2, n] in a class of its own.
Partition SingletonPartition(uint64_t n);

struct ConflictOptions {
  uint64_t guard = 100000;  // refuse larger n unless raised
  unsigned workers = 1;
};

// Exact number of conflicting pairs 2 <= a < b <= n, by pair enumeration.
uint64_t CountConflicts(const Partition& p, const ConflictOptions& options = {});

// K_to - K_from for relabeling the maximal element n, where adjoining n to
// class j costs K_j = E_j + sum_{k != j} B_k. Computed from tallies only.
// Tallies must cover every class of p, exclude n itself, and agree with the
// class sizes; otherwise kInconsistent.
int64_t ConflictDeltaOfMove(const Partition& p, ClassId from, ClassId to,
                            std::span<const ClassTally> tallies);

// Same quantity from the two relevant tallies alone; `to` may be the empty
// class (pass a zero tally with j == kNewClass).
int64_t MoveDelta(const ClassTally& from, const ClassTally& to);

// Tallies of probe n against the classes of p restricted to [2, n-1], one
// per class with members there, ascending by id. Direct gcd scan. Needs
// 3 <= n <= p.n() + 1.
std::vector<ClassTally> ScanTallies(const Partition& p, uint64_t n);

// Partition CSV: header "integer,class", one row per integer ascending.
void WritePartitionCsv(const Partition& p, std::ostream& out);
Partition ReadPartitionCsv(std::istream& in);

}  // namespace intclust

#endif  // INTCLUST_PARTITION_H_
