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

#include "intclust/greedy.h"

#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "intclust/status.h"
#include "oracles.h"

namespace intclust {
namespace {

using Classes = std::vector<std::vector<uint64_t>>;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kIo;
}

const PrimeTable& Table() {
  static const PrimeTable t(1000000);
  return t;
}

std::vector<uint32_t> Labels(const Partition& p) {
  return {p.labels().begin(), p.labels().end()};
}

TEST(GreedyStep, ThreeOpensAClass) {
  GreedyState s = InitialState(GreedyMode::kReference);
  const std::vector<ClassTally> t = {{1, 3, 0, 1}};
  const StepResult r = GreedyStep(s, 3, t);
  EXPECT_TRUE(r.opened_class);
  EXPECT_EQ(s.partition.Classes(), (Classes{{2}, {3}}));
}

TEST(GreedyStep, FourJoinsTwo) {
  GreedyState s = InitialState(GreedyMode::kReference);
  GreedyStep(s, 3, std::vector<ClassTally>{{1, 3, 0, 1}});
  const StepResult r = GreedyStep(s, 4, std::vector<ClassTally>{{1, 4, 1, 0}, {2, 4, 0, 1}});
  EXPECT_EQ(r.chosen, 1u);
  EXPECT_EQ(r.added_conflicts, 0u);
  EXPECT_EQ(s.partition.Classes(), (Classes{{2, 4}, {3}}));
}

TEST(GreedyStep, NineJoinsThree) {
  GreedyState s = RunReference(8);
  // Deltas: new 0, class 1 -2, class 2 +1, {5} -1, {7} -1.
  const std::vector<ClassTally> t = {{1, 9, 1, 3}, {2, 9, 1, 0}, {3, 9, 0, 1}, {4, 9, 0, 1}};
  const StepResult r = GreedyStep(s, 9, t);
  EXPECT_EQ(r.chosen, 2u);
  EXPECT_FALSE(r.opened_class);
  EXPECT_EQ(r.added_conflicts, 1u);  // friend 6 sits in class 1
}

TEST(GreedyStep, MissingOrWrongTallies) {
  GreedyState s = RunReference(8);
  const std::vector<ClassTally> missing = {{1, 9, 1, 3}, {2, 9, 1, 0}, {3, 9, 0, 1}};
  EXPECT_EQ(CodeOf([&] { GreedyStep(s, 9, missing); }), ErrorCode::kInconsistent);
  const std::vector<ClassTally> stale = {{1, 9, 1, 2}, {2, 9, 1, 0}, {3, 9, 0, 1}, {4, 9, 0, 1}};
  EXPECT_EQ(CodeOf([&] { GreedyStep(s, 9, stale); }), ErrorCode::kInconsistent);
  const std::vector<ClassTally> good = {{1, 10, 1, 3}, {2, 10, 1, 0}, {3, 10, 0, 1},
                                        {4, 10, 0, 1}};
  EXPECT_EQ(CodeOf([&] { GreedyStep(s, 10, good); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(s.m(), 8u);
}

TEST(RunReference, SmallListings) {
  EXPECT_EQ(RunReference(3).partition.Classes(), (Classes{{2}, {3}}));
  EXPECT_EQ(RunReference(4).partition.Classes(), (Classes{{2, 4}, {3}}));
  EXPECT_EQ(RunReference(5).partition.Classes(), (Classes{{2, 4}, {3}, {5}}));
  EXPECT_EQ(RunReference(6).partition.Classes(), (Classes{{2, 4, 6}, {3}, {5}}));
  EXPECT_EQ(RunReference(15).partition.Classes(),
            (Classes{{2, 4, 6, 8, 10, 12, 14}, {3, 9, 15}, {5}, {7}, {11}, {13}}));
}

TEST(RunReference, GuardRefuses) {
  EXPECT_EQ(CodeOf([] { RunReference(100001); }), ErrorCode::kRefused);
  EXPECT_EQ(CodeOf([] { RunReference(50, ReferenceOptions{49}); }), ErrorCode::kRefused);
  EXPECT_EQ(CodeOf([] { RunReference(1); }), ErrorCode::kInvalidArgument);
}

TEST(RunReference, MatchesBruteForceGreedyTo2000) {
  const GreedyState s = RunReference(2000);
  EXPECT_EQ(Labels(s.partition), oracle::Greedy(2000));
  EXPECT_TRUE(s.anomalies.empty());
  EXPECT_TRUE(s.canonical);
}

TEST(RunReference, ConflictTotalMatchesPairCount) {
  for (uint64_t n : {2u, 3u, 15u, 100u, 777u}) {
    const GreedyState s = RunReference(n);
    EXPECT_EQ(s.conflicts, oracle::Conflicts(Labels(s.partition))) << n;
  }
}

TEST(RunReference, EqualsCanonicalAt10000) {
  EXPECT_EQ(RunReference(10000).partition, CanonicalPartition(10000, Table()));
}

TEST(ModeEquivalence, FullSweepTo10000) {
  const GreedyState ref = RunReference(10000);
  const GreedyState acc = RunAccelerated(10000, Table());
  EXPECT_EQ(ref.partition, acc.partition);
  EXPECT_EQ(ref.conflicts, acc.conflicts);
  EXPECT_TRUE(acc.anomalies.empty());
  // Every prefix agrees as well, since both runs only append.
  for (uint64_t n : {2u, 3u, 57u, 1000u, 9999u}) {
    EXPECT_EQ(RunReference(n).partition, RunAccelerated(n, Table()).partition) << n;
  }
}

TEST(ModeEquivalence, RandomSizesTo100000) {
  // Both engines extend prefixes, so one pass in each mode with checkpoints at
  // sorted random sizes covers every sampled n.
  std::mt19937_64 rng(99);
  std::vector<uint64_t> sizes;
  for (int k = 0; k < 100; ++k) sizes.push_back(2 + rng() % 99999);
  std::sort(sizes.begin(), sizes.end());
  GreedyState ref = InitialState(GreedyMode::kReference);
  GreedyState acc = InitialState(GreedyMode::kAccelerated);
  for (uint64_t n : sizes) {
    ContinueReference(ref, n);
    ContinueAccelerated(acc, n, Table());
    ASSERT_EQ(ref.partition, acc.partition) << n;
    ASSERT_EQ(ref.conflicts, acc.conflicts) << n;
  }
}

TEST(GreedyProperties, ParityPrimesAndClassBound) {
  const GreedyState s = RunAccelerated(200000, Table());
  ASSERT_TRUE(s.anomalies.empty());
  ClassId classes = 1;
  for (uint64_t n = 3; n <= 200000; ++n) {
    const ClassId c = s.partition.label(n);
    if (n % 2 == 0) {
      ASSERT_EQ(c, 1u) << n;
    }
    if (Table().is_prime(n)) {
      ASSERT_EQ(c, ++classes) << n;
    } else {
      const Factorization f = Factorize(n, Table());
      ASSERT_LE(c, Table().index_of(f.smallest_prime())) << n;
    }
  }
}

TEST(GreedyProperties, PrefixNeverRelabels) {
  GreedyState s = InitialState(GreedyMode::kReference);
  std::vector<uint32_t> previous;
  for (uint64_t n = 3; n <= 400; ++n) {
    ContinueReference(s, n);
    const auto now = Labels(s.partition);
    ASSERT_TRUE(std::equal(previous.begin(), previous.end(), now.begin()));
    previous = now;
  }
}

TEST(GreedyProperties, ChosenClassMinimizesConflictsTo2000) {
  // Price each placement of n by recounting the conflicts it adds.
  GreedyState s = InitialState(GreedyMode::kReference);
  for (uint64_t n = 3; n <= 2000; ++n) {
    const auto labels = Labels(s.partition);
    std::map<ClassId, std::pair<uint64_t, uint64_t>> fe;
    uint64_t all = 0;
    for (uint64_t m = 2; m < n; ++m) {
      auto& [f, e] = fe[labels[m - 2]];
      if (std::gcd(m, n) > 1) {
        ++f;
        ++all;
      } else {
        ++e;
      }
    }
    uint64_t best = all;
    ClassId best_id = kNewClass;
    for (const auto& [id, t] : fe) {
      const uint64_t cost = all - t.first + t.second;
      if (cost < best) {
        best = cost;
        best_id = id;
      }
    }
    const auto tallies = ScanTallies(s.partition, n);
    const StepResult r = GreedyStep(s, n, tallies);
    ASSERT_EQ(r.added_conflicts, best) << n;
    if (best_id != kNewClass) {
      ASSERT_EQ(r.chosen, best_id) << n;
    }
    ASSERT_EQ(r.opened_class, best_id == kNewClass) << n;
  }
}

TEST(Accelerated, PrimesSkipTallies) {
  GreedyState s = RunAccelerated(96, Table());
  ContinueAccelerated(s, 97, Table());
  EXPECT_EQ(s.partition.label(97), 25u);
  EXPECT_EQ(s.partition.class_size(25), 1u);
}

TEST(Accelerated, NeedsTable) {
  PrimeTable small(1000);
  EXPECT_EQ(CodeOf([&] { RunAccelerated(1001, small); }), ErrorCode::kOutOfRange);
}

TEST(Accelerated, FallsBackToScansAfterAnomaly) {
  // Force an anomaly by seeding a non-canonical state, then check the
  // engine keeps matching the reference rule through direct scans.
  GreedyState ref = RunReference(30);
  GreedyState acc = RunReference(30);
  acc.mode = GreedyMode::kAccelerated;
  acc.canonical = false;
  ref.partition.Move(15, 1);
  acc.partition.Move(15, 1);
  ContinueReference(ref, 3000);
  ContinueAccelerated(acc, 3000, Table());
  EXPECT_EQ(ref.partition, acc.partition);
}

TEST(Accelerated, BudgetMarksUnverified) {
  GreedyState s = RunReference(30);
  s.mode = GreedyMode::kAccelerated;
  s.canonical = false;
  ContinueAccelerated(s, 40, Table(), AcceleratedOptions{35});
  EXPECT_EQ(s.unverified, (std::vector<uint64_t>{38, 39, 40}));
  EXPECT_EQ(s.partition.n(), 40u);
}

TEST(Analyze, FirstDeviation) {
  const PrimeTable table(kN0);
  const RoughCounter counter(table);
  const VerifyRecord r = AnalyzeCanonicalStep(kN0, counter);
  EXPECT_EQ(r.spf_index, 2u);
  EXPECT_EQ(r.expected, 2u);
  EXPECT_EQ(r.chosen, 1u);
  EXPECT_EQ(r.status, VerifyStatus::kAnomaly);
  EXPECT_EQ(r.target_size, (kN0 - 3) / 6);
  ASSERT_EQ(r.deltas.size(), 1u);
  EXPECT_EQ(r.deltas[0], static_cast<int64_t>((kN0 - 1) / 2 - 36495360));
}

TEST(CanonicalMoveDelta, FirstDeviation) {
  const PrimeTable table(kN0);
  const RoughCounter counter(table);
  const int64_t expected = static_cast<int64_t>((kN0 - 3) / 6) -
                           static_cast<int64_t>((kN0 - 1) / 2 - 36495360);
  EXPECT_EQ(expected, -686785);
  EXPECT_EQ(CanonicalMoveDelta(kN0, 2, 1, counter), expected);
  EXPECT_EQ(CanonicalMoveDelta(kN0, 2, 2, counter), 0);
}

TEST(CanonicalMoveDelta, MatchesScanOnSmallN) {
  const RoughCounter counter(Table());
  for (uint64_t n = 3; n <= 400; ++n) {
    const Partition p = CanonicalPartition(n, Table());
    const auto tallies = ScanTallies(p, n);
    const ClassId from = p.label(n);
    for (ClassId to = 0; to <= p.next_id() - 1; ++to) {
      ASSERT_EQ(CanonicalMoveDelta(n, from, to, counter),
                ConflictDeltaOfMove(p, from, to, tallies))
          << n << " " << to;
    }
  }
  EXPECT_EQ(CanonicalMoveDelta(9, 2, 1, counter), 3);
  EXPECT_EQ(CodeOf([&] { CanonicalMoveDelta(9, 1, 2, counter); }),
            ErrorCode::kInvalidArgument);
}

TEST(VerifyRange, AllPassTo10000) {
  const VerifySummary s = VerifyRange(2, 10000, Table());
  EXPECT_TRUE(s.all_pass());
  EXPECT_EQ(s.checked, 9999u);
  EXPECT_EQ(s.passed + s.auto_passed, 9999u);
}

TEST(VerifyRange, PrimesAutoPass) {
  std::vector<VerifyRecord> recs;
  VerifyRange(2, 100, Table(), {}, [&](const VerifyRecord& r) { recs.push_back(r); });
  ASSERT_EQ(recs.size(), 99u);
  for (const auto& r : recs) {
    if (Table().is_prime(r.n)) {
      EXPECT_EQ(r.status, VerifyStatus::kAutoPass) << r.n;
      EXPECT_EQ(r.expected, Table().index_of(r.n));
    }
  }
}

TEST(VerifyRange, FirstDeviationFailsAtEvenClass) {
  const PrimeTable table(kN0);
  const VerifySummary s = VerifyRange(kN0, kN0, table);
  ASSERT_EQ(s.anomalies.size(), 1u);
  EXPECT_EQ(s.anomalies[0], (Anomaly{kN0, 2, 1}));
}

TEST(VerifyRange, WorkersGiveIdenticalOrderedRecords) {
  std::vector<uint64_t> one;
  std::vector<uint64_t> many;
  const auto s1 = VerifyRange(2, 30000, Table(), {1, 4096},
                              [&](const VerifyRecord& r) { one.push_back(r.n); });
  const auto s4 = VerifyRange(2, 30000, Table(), {4, 1000},
                              [&](const VerifyRecord& r) { many.push_back(r.n); });
  EXPECT_EQ(one, many);
  EXPECT_EQ(s1.passed, s4.passed);
  EXPECT_EQ(s1.auto_passed, s4.auto_passed);
  ASSERT_EQ(one.size(), 29999u);
  for (size_t k = 0; k < one.size(); ++k) ASSERT_EQ(one[k], k + 2);
}

TEST(VerifyRange, BadRanges) {
  EXPECT_EQ(CodeOf([] { VerifyRange(5, 4, Table()); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { VerifyRange(1, 4, Table()); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { VerifyRange(2, 1000001, Table()); }), ErrorCode::kOutOfRange);
}

}  // namespace
}  // namespace intclust
