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

// The natural greedy clustering of 2, 3, 4, ...: each new integer n joins the
// class that adds the fewest conflicts, i.e. the class j maximizing
// friends - enemies, where the empty class (id 0) scores 0 and ties go to the
// smallest id.
//
// Two engines produce the same labels:
//   * reference: tallies every class by enumerating the friends of n;
//   * accelerated: while the partition is the smallest-prime-factor one,
//     even n go to class 1, primes open a class, and an odd composite n with
//     smallest prime p_i is compared only against classes 1..i using exact
//     counts. A step that leaves class i is recorded as an anomaly; after the
//     first anomaly the engine falls back to bounded direct scans.

#ifndef INTCLUST_GREEDY_H_
#define INTCLUST_GREEDY_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "intclust/exact_counts.h"
#include "intclust/partition.h"
#include "intclust/prime_toolkit.h"

namespace intclust {

enum class GreedyMode { kReference, kAccelerated };

struct Anomaly {
  uint64_t n;
  ClassId expected;
  ClassId chosen;
  bool operator==(const Anomaly&) const = default;
};

struct GreedyState {
  Partition partition;  // covers [2, m]
  GreedyMode mode = GreedyMode::kReference;
  std::vector<Anomaly> anomalies;
  std::vector<uint64_t> unverified;
  uint64_t conflicts = 0;  // running total of the conflicts each step added
  bool canonical = true;   // partition known to be the smallest-prime-factor one

  uint64_t m() const { return partition.n(); }
};

// G(2) = {{2}}.
GreedyState InitialState(GreedyMode mode);

struct StepResult {
  ClassId chosen;  // id n was placed in (a fresh id when it opened a class)
  bool opened_class;
  uint64_t added_conflicts;
};

// Adjoins n = state.m() + 1. `tallies` must hold exactly one tally per
// existing class, for probe n, consistent with the class sizes; otherwise
// kInconsistent.
StepResult GreedyStep(GreedyState& state, uint64_t n, std::span<const ClassTally> tallies);

struct ReferenceOptions {
  uint64_t guard = 100000;
};

GreedyState RunReference(uint64_t n, const ReferenceOptions& options = {});
void ContinueReference(GreedyState& state, uint64_t to, const ReferenceOptions& options = {});

struct AcceleratedOptions {
  // Largest n for which a direct scan is attempted once the partition is no
  // longer canonical. Beyond it steps are marked unverified.
  uint64_t naive_budget = 2000000;
};

GreedyState RunAccelerated(uint64_t n, const PrimeTable& table,
                           const AcceleratedOptions& options = {});
void ContinueAccelerated(GreedyState& state, uint64_t to, const PrimeTable& table,
                         const AcceleratedOptions& options = {});

enum class VerifyStatus { kPass, kAutoPass, kAnomaly, kUnverified };

const char* VerifyStatusName(VerifyStatus status);

// Outcome of adjoining n to the smallest-prime-factor partition of [2, n-1].
struct VerifyRecord {
  uint64_t n = 0;
  size_t spf_index = 0;
  std::vector<int64_t> deltas;  // friends - enemies in classes 1..spf_index-1
  uint64_t target_size = 0;     // |S(spf_index, n-1)|, all friends
  ClassId expected = 0;
  ClassId chosen = 0;
  VerifyStatus status = VerifyStatus::kPass;
};

// Even and prime n pass automatically. An odd composite passes when every
// delta is strictly below target_size.
VerifyRecord AnalyzeCanonicalStep(uint64_t n, const RoughCounter& counter);

// Conflict change from moving n out of class `from` into class `to` of the
// smallest-prime-factor partition of [2, n], from exact counts. `from` must
// be n's class; `to` may be kNewClass.
int64_t CanonicalMoveDelta(uint64_t n, ClassId from, ClassId to, const RoughCounter& counter);

struct VerifySummary {
  uint64_t from = 0;
  uint64_t to = 0;
  uint64_t checked = 0;
  uint64_t passed = 0;
  uint64_t auto_passed = 0;
  std::vector<Anomaly> anomalies;
  std::vector<uint64_t> unverified;

  bool all_pass() const { return anomalies.empty() && unverified.empty(); }
};

struct VerifyOptions {
  unsigned workers = 1;
  uint64_t block = 4096;
};

using VerifySink = std::function<void(const VerifyRecord&)>;

// Checks every n in [from, to] independently. Records reach `sink` in
// increasing n regardless of the worker count. Needs 2 <= from <= to <=
// table.limit().
VerifySummary VerifyRange(uint64_t from, uint64_t to, const PrimeTable& table,
                          const VerifyOptions& options = {}, const VerifySink& sink = {});

}  // namespace intclust

#endif  // INTCLUST_GREEDY_H_
