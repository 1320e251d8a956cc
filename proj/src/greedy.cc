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

#include <algorithm>
#include <exception>
#include <thread>

#include "intclust/status.h"

namespace intclust {
namespace {

std::vector<uint64_t> DistinctPrimesByTrial(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Tallies of n against every class of p (which covers [2, n-1]), found by
// walking the multiples of each prime divisor of n.
class DirectTallier {
 public:
  std::vector<ClassTally> Tally(const Partition& p, uint64_t n,
                                const std::vector<uint64_t>& primes) {
    if (stamp_.size() < n) stamp_.resize(n, 0);
    friends_.assign(p.next_id(), 0);
    const auto labels = p.labels();
    for (uint64_t q : primes) {
      for (uint64_t m = q; m < n; m += q) {
        if (stamp_[m] == n) continue;
        stamp_[m] = n;
        ++friends_[labels[m - 2]];
      }
    }
    std::vector<ClassTally> tallies;
    tallies.reserve(p.class_count());
    for (const auto& [id, size] : p.class_sizes()) {
      tallies.push_back({id, n, friends_[id], size - friends_[id]});
    }
    return tallies;
  }

 private:
  std::vector<uint64_t> stamp_;
  std::vector<uint64_t> friends_;
};

void CheckNext(const GreedyState& state, uint64_t n) {
  if (n != state.m() + 1) {
    Fail(ErrorCode::kInvalidArgument,
         "greedy step expects n = " + std::to_string(state.m() + 1));
  }
}

// Marks the state non-canonical when n did not land where the smallest prime
// factor partition puts it. `smallest` is n's smallest prime.
void TrackCanonical(GreedyState& state, uint64_t n, uint64_t smallest,
                    const StepResult& step) {
  if (!state.canonical) return;
  if (smallest == n) {
    if (step.opened_class) return;
    state.anomalies.push_back({n, state.partition.next_id(), step.chosen});
  } else {
    const ClassId expected = state.partition.label(smallest);
    if (step.chosen == expected) return;
    state.anomalies.push_back({n, expected, step.chosen});
  }
  state.canonical = false;
}

}  // namespace

const char* VerifyStatusName(VerifyStatus status) {
  switch (status) {
    case VerifyStatus::kPass: return "pass";
    case VerifyStatus::kAutoPass: return "auto";
    case VerifyStatus::kAnomaly: return "anomaly";
    case VerifyStatus::kUnverified: return "unverified";
  }
  return "unknown";
}

GreedyState InitialState(GreedyMode mode) {
  GreedyState state;
  state.mode = mode;
  state.partition.Append(1);
  return state;
}

StepResult GreedyStep(GreedyState& state, uint64_t n, std::span<const ClassTally> tallies) {
  CheckNext(state, n);
  const auto& sizes = state.partition.class_sizes();
  if (tallies.size() != sizes.size()) {
    Fail(ErrorCode::kInconsistent, "missing tally: need one per existing class");
  }
  ClassId best = kNewClass;
  int64_t best_balance = 0;
  uint64_t all_friends = 0;
  auto it = sizes.begin();
  for (const ClassTally& t : tallies) {
    if (t.j != it->first || t.n != n || t.total() != it->second) {
      Fail(ErrorCode::kInconsistent,
           "tally for class " + std::to_string(t.j) + " does not match class " +
               std::to_string(it->first));
    }
    ++it;
    all_friends += t.friends;
    if (t.balance() > best_balance) {
      best_balance = t.balance();
      best = t.j;
    }
  }
  StepResult result{best, best == kNewClass, all_friends - static_cast<uint64_t>(best_balance)};
  if (result.opened_class) result.chosen = state.partition.next_id();
  state.partition.Append(result.chosen);
  state.conflicts += result.added_conflicts;
  return result;
}

GreedyState RunReference(uint64_t n, const ReferenceOptions& options) {
  if (n < 2) Fail(ErrorCode::kInvalidArgument, "greedy needs n >= 2");
  GreedyState state = InitialState(GreedyMode::kReference);
  ContinueReference(state, n, options);
  return state;
}

void ContinueReference(GreedyState& state, uint64_t to, const ReferenceOptions& options) {
  if (to > options.guard) {
    Fail(ErrorCode::kRefused, "reference greedy up to " + std::to_string(to) +
                                  " exceeds the guard " + std::to_string(options.guard));
  }
  DirectTallier tallier;
  for (uint64_t n = state.m() + 1; n <= to; ++n) {
    const auto primes = DistinctPrimesByTrial(n);
    const auto tallies = tallier.Tally(state.partition, n, primes);
    const StepResult step = GreedyStep(state, n, tallies);
    TrackCanonical(state, n, primes.front(), step);
  }
}

VerifyRecord AnalyzeCanonicalStep(uint64_t n, const RoughCounter& counter) {
  const PrimeTable& table = counter.table();
  VerifyRecord rec;
  rec.n = n;
  if (n % 2 == 0) {
    rec.spf_index = 1;
    rec.expected = rec.chosen = 1;
    rec.status = VerifyStatus::kAutoPass;
    return rec;
  }
  const Factorization f = Factorize(n, table);
  const uint64_t q1 = f.smallest_prime();
  rec.spf_index = table.index_of(q1);
  rec.expected = static_cast<ClassId>(rec.spf_index);
  if (q1 == n) {
    rec.chosen = rec.expected;
    rec.status = VerifyStatus::kAutoPass;
    return rec;
  }
  const size_t i = rec.spf_index;
  rec.target_size = ClassSize(i, n - 1, counter);
  rec.deltas.reserve(i - 1);
  ClassId best = kNewClass;
  int64_t best_balance = 0;
  for (size_t j = 1; j < i; ++j) {
    const int64_t d = CanonicalTally(j, f, counter).balance();
    rec.deltas.push_back(d);
    if (d > best_balance) {
      best_balance = d;
      best = static_cast<ClassId>(j);
    }
  }
  if (static_cast<int64_t>(rec.target_size) > best_balance) best = rec.expected;
  rec.chosen = best;
  rec.status = best == rec.expected ? VerifyStatus::kPass : VerifyStatus::kAnomaly;
  return rec;
}

int64_t CanonicalMoveDelta(uint64_t n, ClassId from, ClassId to,
                           const RoughCounter& counter) {
  if (n < 3) Fail(ErrorCode::kInvalidArgument, "move needs n >= 3");
  const PrimeTable& table = counter.table();
  if (n > table.limit()) Fail(ErrorCode::kOutOfRange, "n exceeds the sieve limit");
  const Factorization f = Factorize(n, table);
  const size_t home = table.index_of(f.smallest_prime());
  if (from != home) {
    Fail(ErrorCode::kInvalidArgument, "n is not in the `from` class");
  }
  if (to != kNewClass && to > table.pi(n)) {
    Fail(ErrorCode::kInvalidArgument, "target class " + std::to_string(to) + " does not exist");
  }
  if (from == to) return 0;
  auto tally = [&](ClassId c) -> ClassTally {
    if (c == kNewClass) return {c, n, 0, 0};
    if (table.prime(c) == n) return {c, n, 0, 0};  // n was alone in its class
    return CanonicalTally(c, f, counter);
  };
  return MoveDelta(tally(from), tally(to));
}

GreedyState RunAccelerated(uint64_t n, const PrimeTable& table,
                           const AcceleratedOptions& options) {
  if (n < 2) Fail(ErrorCode::kInvalidArgument, "greedy needs n >= 2");
  GreedyState state = InitialState(GreedyMode::kAccelerated);
  ContinueAccelerated(state, n, table, options);
  return state;
}

void ContinueAccelerated(GreedyState& state, uint64_t to, const PrimeTable& table,
                         const AcceleratedOptions& options) {
  if (to > table.limit()) {
    Fail(ErrorCode::kOutOfRange, "accelerated greedy needs n <= sieve limit");
  }
  const RoughCounter counter(table);
  DirectTallier tallier;
  for (uint64_t n = state.m() + 1; n <= to; ++n) {
    const Factorization f = Factorize(n, table);
    const uint64_t q1 = f.smallest_prime();
    if (state.canonical) {
      // All friends of n below n: (n-2) integers minus the phi(n)-1 coprime ones.
      const uint64_t all_friends = n - 1 - Totient(f);
      if (n % 2 == 0) {
        state.partition.Append(1);
        state.conflicts += all_friends - (n / 2 - 1);
      } else if (q1 == n) {
        state.partition.Append(state.partition.next_id());
        state.conflicts += all_friends;
      } else {
        const VerifyRecord rec = AnalyzeCanonicalStep(n, counter);
        const int64_t balance = rec.chosen == rec.expected
                                    ? static_cast<int64_t>(rec.target_size)
                                    : rec.deltas[rec.chosen - 1];
        state.partition.Append(rec.chosen);
        state.conflicts += all_friends - static_cast<uint64_t>(balance);
        if (rec.chosen != rec.expected) {
          state.anomalies.push_back({n, rec.expected, rec.chosen});
          state.canonical = false;
        }
      }
      continue;
    }
    if (n - 2 > options.naive_budget) {
      // No exact decision available; keep the smallest-prime class.
      const ClassId fallback = q1 == n ? state.partition.next_id()
                                       : state.partition.label(q1);
      state.partition.Append(fallback);
      state.unverified.push_back(n);
      continue;
    }
    std::vector<uint64_t> primes;
    for (const auto& pp : f.factors) primes.push_back(pp.prime);
    const auto tallies = tallier.Tally(state.partition, n, primes);
    GreedyStep(state, n, tallies);
  }
}

VerifySummary VerifyRange(uint64_t from, uint64_t to, const PrimeTable& table,
                          const VerifyOptions& options, const VerifySink& sink) {
  if (from < 2 || from > to) {
    Fail(ErrorCode::kInvalidArgument, "verify needs 2 <= from <= to");
  }
  if (to > table.limit()) {
    Fail(ErrorCode::kOutOfRange, "verify range exceeds the sieve limit");
  }
  const RoughCounter counter(table);
  VerifySummary summary;
  summary.from = from;
  summary.to = to;
  auto absorb = [&](const VerifyRecord& rec) {
    ++summary.checked;
    switch (rec.status) {
      case VerifyStatus::kPass: ++summary.passed; break;
      case VerifyStatus::kAutoPass: ++summary.auto_passed; break;
      case VerifyStatus::kAnomaly:
        summary.anomalies.push_back({rec.n, rec.expected, rec.chosen});
        break;
      case VerifyStatus::kUnverified: summary.unverified.push_back(rec.n); break;
    }
    if (sink) sink(rec);
  };

  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    for (uint64_t n = from; n <= to; ++n) absorb(AnalyzeCanonicalStep(n, counter));
    return summary;
  }
  const uint64_t block = std::max<uint64_t>(1, options.block);
  std::vector<std::vector<VerifyRecord>> results(workers);
  for (uint64_t round = from; round <= to;) {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    uint64_t round_end = round;
    for (unsigned w = 0; w < workers; ++w) {
      const uint64_t lo = round + w * block;
      results[w].clear();
      if (lo > to) continue;
      const uint64_t hi = std::min(to, lo + block - 1);
      round_end = hi;
      pool.emplace_back([&, w, lo, hi] {
        try {
          for (uint64_t n = lo; n <= hi; ++n) {
            results[w].push_back(AnalyzeCanonicalStep(n, counter));
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (const auto& chunk : results) {
      for (const auto& rec : chunk) absorb(rec);
    }
    if (round_end == to) break;
    round = round_end + 1;
  }
  return summary;
}

}  // namespace intclust
