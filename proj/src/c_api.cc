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

#include "intclust/intclust.h"

#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "intclust/exact_counts.h"
#include "intclust/formats.h"
#include "intclust/greedy.h"
#include "intclust/partition.h"
#include "intclust/prime_toolkit.h"
#include "intclust/status.h"
#include "intclust/threshold.h"

struct intclust_primes {
  intclust::PrimeTable table;
};

struct intclust_partition {
  intclust::Partition partition;
  std::vector<intclust::Anomaly> anomalies;
};

namespace {

using namespace intclust;

thread_local std::string g_last_error;

intclust_status FromCode(ErrorCode code) {
  return static_cast<intclust_status>(static_cast<int>(code));
}

// Runs `body`, translating exceptions into a status and the thread's message.
template <typename F>
intclust_status Guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return INTCLUST_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return FromCode(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return INTCLUST_REFUSED;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return INTCLUST_INTERNAL;
  }
}

void Require(bool ok, const char* what) {
  if (!ok) Fail(ErrorCode::kInvalidArgument, what);
}

void Emit(intclust_write_fn write, void* user, const std::string& s) {
  if (write != nullptr && !s.empty()) write(s.data(), s.size(), user);
}

CensusReading ToReading(intclust_census_reading r) {
  switch (r) {
    case INTCLUST_CENSUS_SQUAREFREE: return CensusReading::kSquarefree;
    case INTCLUST_CENSUS_EXACTLY_THREE: return CensusReading::kExactlyThree;
    case INTCLUST_CENSUS_AT_LEAST_THREE: return CensusReading::kAtLeastThree;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown census reading");
}

constexpr uint64_t kCensusPrimes[] = {19, 23, 29, 31, 37, 41, 43};

}  // namespace

extern "C" {

const char* intclust_last_error(void) { return g_last_error.c_str(); }

const char* intclust_status_name(intclust_status status) {
  if (status == INTCLUST_OK) return "ok";
  if (status == INTCLUST_INTERNAL) return "internal";
  if (status >= INTCLUST_INVALID_ARGUMENT && status <= INTCLUST_IO) {
    return ErrorCodeName(static_cast<ErrorCode>(status));
  }
  return "unknown";
}

const char* intclust_version(void) { return "1.0.0"; }

intclust_status intclust_primes_create(uint64_t limit, intclust_primes** out) {
  return Guarded([&] {
    Require(out != nullptr, "null output");
    *out = new intclust_primes{PrimeTable(limit)};
  });
}

intclust_status intclust_primes_load_or_build(uint64_t limit, const char* path,
                                              intclust_primes** out) {
  return Guarded([&] {
    Require(out != nullptr && path != nullptr, "null argument");
    *out = new intclust_primes{LoadOrBuildPrimeTable(limit, path)};
  });
}

void intclust_primes_destroy(intclust_primes* primes) { delete primes; }

uint64_t intclust_primes_limit(const intclust_primes* primes) {
  return primes == nullptr ? 0 : primes->table.limit();
}

intclust_status intclust_pi(const intclust_primes* primes, uint64_t x, uint64_t* out) {
  return Guarded([&] {
    Require(primes != nullptr && out != nullptr, "null argument");
    *out = primes->table.pi(x);
  });
}

intclust_status intclust_totient(const intclust_primes* primes, uint64_t n, uint64_t* out) {
  return Guarded([&] {
    Require(primes != nullptr && out != nullptr, "null argument");
    *out = Totient(Factorize(n, primes->table));
  });
}

intclust_status intclust_factorize(const intclust_primes* primes, uint64_t n,
                                   uint64_t* prime_out, uint32_t* exponent_out,
                                   size_t capacity, size_t* count) {
  return Guarded([&] {
    Require(primes != nullptr && count != nullptr, "null argument");
    const Factorization f = Factorize(n, primes->table);
    *count = f.factors.size();
    for (size_t k = 0; k < f.factors.size() && k < capacity; ++k) {
      if (prime_out != nullptr) prime_out[k] = f.factors[k].prime;
      if (exponent_out != nullptr) exponent_out[k] = f.factors[k].exponent;
    }
  });
}

intclust_status intclust_greedy(const intclust_primes* primes, uint64_t n, intclust_mode mode,
                                uint64_t guard, intclust_partition** out) {
  return Guarded([&] {
    Require(out != nullptr, "null output");
    GreedyState state;
    if (mode == INTCLUST_MODE_REFERENCE) {
      state = RunReference(n, ReferenceOptions{guard});
    } else if (mode == INTCLUST_MODE_ACCELERATED) {
      Require(primes != nullptr, "accelerated mode needs a prime table");
      state = RunAccelerated(n, primes->table);
    } else {
      Fail(ErrorCode::kInvalidArgument, "unknown greedy mode");
    }
    *out = new intclust_partition{std::move(state.partition), std::move(state.anomalies)};
  });
}

intclust_status intclust_canonical_partition(const intclust_primes* primes, uint64_t n,
                                             intclust_partition** out) {
  return Guarded([&] {
    Require(primes != nullptr && out != nullptr, "null argument");
    *out = new intclust_partition{CanonicalPartition(n, primes->table), {}};
  });
}

intclust_status intclust_exceptional_partition(const intclust_primes* primes, uint64_t n,
                                               intclust_partition** out) {
  return Guarded([&] {
    Require(primes != nullptr && out != nullptr, "null argument");
    *out = new intclust_partition{ExceptionalPartition(n, primes->table), {}};
  });
}

intclust_status intclust_partition_from_labels(const uint32_t* labels, size_t count,
                                               intclust_partition** out) {
  return Guarded([&] {
    Require(out != nullptr && (labels != nullptr || count == 0), "null argument");
    Require(count > 0, "a partition needs at least the integer 2");
    *out = new intclust_partition{
        Partition::FromLabels(std::vector<ClassId>(labels, labels + count)), {}};
  });
}

intclust_status intclust_partition_read_csv(const char* path, intclust_partition** out) {
  return Guarded([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    std::ifstream in(path);
    if (!in) Fail(ErrorCode::kIo, std::string("cannot open ") + path);
    *out = new intclust_partition{ReadPartitionCsv(in), {}};
  });
}

void intclust_partition_destroy(intclust_partition* partition) { delete partition; }

uint64_t intclust_partition_n(const intclust_partition* partition) {
  return partition == nullptr ? 0 : partition->partition.n();
}

size_t intclust_partition_class_count(const intclust_partition* partition) {
  return partition == nullptr ? 0 : partition->partition.class_count();
}

intclust_status intclust_partition_label(const intclust_partition* partition, uint64_t m,
                                         uint32_t* out) {
  return Guarded([&] {
    Require(partition != nullptr && out != nullptr, "null argument");
    *out = partition->partition.label(m);
  });
}

size_t intclust_partition_anomaly_count(const intclust_partition* partition) {
  return partition == nullptr ? 0 : partition->anomalies.size();
}

intclust_status intclust_partition_anomaly(const intclust_partition* partition, size_t index,
                                           uint64_t* n, uint32_t* expected, uint32_t* chosen) {
  return Guarded([&] {
    Require(partition != nullptr, "null argument");
    if (index >= partition->anomalies.size()) {
      Fail(ErrorCode::kOutOfRange, "anomaly index out of range");
    }
    const Anomaly& a = partition->anomalies[index];
    if (n != nullptr) *n = a.n;
    if (expected != nullptr) *expected = a.expected;
    if (chosen != nullptr) *chosen = a.chosen;
  });
}

intclust_status intclust_partition_write(const intclust_partition* partition,
                                         intclust_format format, intclust_write_fn write,
                                         void* user) {
  return Guarded([&] {
    Require(partition != nullptr && write != nullptr, "null argument");
    if (format == INTCLUST_FORMAT_CSV) {
      std::ostringstream out;
      WritePartitionCsv(partition->partition, out);
      Emit(write, user, out.str());
    } else if (format == INTCLUST_FORMAT_JSON) {
      Emit(write, user, PartitionJson(partition->partition) + "\n");
    } else {
      Fail(ErrorCode::kInvalidArgument, "unsupported partition format");
    }
  });
}

intclust_status intclust_count_conflicts(const intclust_partition* partition, uint64_t guard,
                                         unsigned workers, uint64_t* out) {
  return Guarded([&] {
    Require(partition != nullptr && out != nullptr, "null argument");
    *out = CountConflicts(partition->partition, ConflictOptions{guard, workers});
  });
}

intclust_status intclust_move_delta(const intclust_partition* partition, uint32_t from,
                                    uint32_t to, int64_t* out) {
  return Guarded([&] {
    Require(partition != nullptr && out != nullptr, "null argument");
    const Partition& p = partition->partition;
    const auto tallies = ScanTallies(p, p.n());
    *out = ConflictDeltaOfMove(p, from, to, tallies);
  });
}

intclust_status intclust_canonical_move_delta(const intclust_primes* primes, uint64_t n,
                                              uint32_t from, uint32_t to, int64_t* out) {
  return Guarded([&] {
    Require(primes != nullptr && out != nullptr, "null argument");
    const RoughCounter counter(primes->table);
    *out = CanonicalMoveDelta(n, from, to, counter);
  });
}

intclust_status intclust_verify(const intclust_primes* primes, uint64_t from, uint64_t to,
                                unsigned workers, intclust_write_fn write, void* user,
                                intclust_verify_summary* summary) {
  return Guarded([&] {
    Require(primes != nullptr, "null argument");
    VerifySink sink;
    if (write != nullptr) {
      sink = [&](const VerifyRecord& rec) { Emit(write, user, VerifyRecordJson(rec) + "\n"); };
    }
    const VerifySummary s =
        VerifyRange(from, to, primes->table, VerifyOptions{workers == 0 ? 1 : workers}, sink);
    Emit(write, user, VerifySummaryJson(s) + "\n");
    if (summary != nullptr) {
      *summary = {s.checked,
                  s.passed,
                  s.auto_passed,
                  s.anomalies.size(),
                  s.unverified.size(),
                  s.anomalies.empty() ? 0 : s.anomalies.front().n};
    }
  });
}

intclust_status intclust_even_class_wins(const intclust_primes* primes, uint64_t n,
                                            int* out) {
  return Guarded([&] {
    Require(primes != nullptr && out != nullptr, "null argument");
    *out = EvenClassBeatsClassTwo(Factorize(n, primes->table)) ? 1 : 0;
  });
}

intclust_status intclust_find_n0(const intclust_primes* primes, uint64_t bound, uint64_t* out) {
  return Guarded([&] {
    Require(primes != nullptr && out != nullptr, "null argument");
    const auto found = FindN0(bound, primes->table);
    if (!found) {
      Fail(ErrorCode::kNotFound, "no qualifying n up to " + std::to_string(bound));
    }
    *out = *found;
  });
}

intclust_status intclust_coprime_to_three_candidate(uint64_t* value, int* holds, int* holds_without_last) {
  return Guarded([&] {
    const CoprimeCandidate c = CoprimeToThreeCandidate();
    if (value != nullptr) *value = static_cast<uint64_t>(c.value);
    if (holds != nullptr) *holds = c.holds;
    if (holds_without_last != nullptr) *holds_without_last = c.holds_without_last;
  });
}

intclust_status intclust_n1_value(const intclust_primes* primes, uint64_t i, uint64_t j,
                                  uint64_t t, intclust_n1_record* out) {
  return Guarded([&] {
    Require(primes != nullptr && out != nullptr, "null argument");
    const ThresholdRecord r = N1Value(i, j, t, primes->table);
    *out = {r.i, r.j, r.t, r.p_i, r.n1, r.bound_covers_all ? 1 : 0};
  });
}

intclust_status intclust_n1_table_write(const intclust_primes* primes, uint64_t column_i,
                                        intclust_format format, intclust_write_fn write,
                                        void* user) {
  return Guarded([&] {
    Require(primes != nullptr && write != nullptr, "null argument");
    const auto records = column_i == 0 ? DisplayedN1Table(primes->table)
                                       : N1Column(column_i, primes->table);
    if (format == INTCLUST_FORMAT_CSV) {
      std::ostringstream out;
      WriteN1Csv(records, out);
      Emit(write, user, out.str());
    } else {
      Emit(write, user, N1Json(records) + "\n");
    }
  });
}

intclust_status intclust_census(const intclust_primes* primes, uint64_t p, uint64_t bound,
                                intclust_census_reading reading, uint64_t* count,
                                uint64_t* bound_used) {
  return Guarded([&] {
    Require(primes != nullptr && count != nullptr, "null argument");
    if (bound == 0) bound = DefaultCensusBound(p, primes->table);
    *count = CensusThreeFactor(p, bound, primes->table, ToReading(reading)).count;
    if (bound_used != nullptr) *bound_used = bound;
  });
}

intclust_status intclust_census_table_write(const intclust_primes* primes,
                                            intclust_census_reading reading,
                                            intclust_format format, intclust_write_fn write,
                                            void* user) {
  return Guarded([&] {
    Require(primes != nullptr && write != nullptr, "null argument");
    std::vector<CandidateCensus> rows;
    for (uint64_t p : kCensusPrimes) {
      rows.push_back(CensusThreeFactor(p, DefaultCensusBound(p, primes->table), primes->table,
                                       ToReading(reading)));
    }
    if (format == INTCLUST_FORMAT_CSV) {
      std::ostringstream out;
      WriteCensusCsv(rows, out);
      Emit(write, user, out.str());
    } else {
      Emit(write, user, CensusJson(rows) + "\n");
    }
  });
}

intclust_status intclust_census_nonnegative(const intclust_primes* primes, uint64_t p,
                                            uint64_t bound, intclust_census_reading reading,
                                            uint64_t* checked, uint64_t* nonnegative) {
  return Guarded([&] {
    Require(primes != nullptr && checked != nullptr && nonnegative != nullptr,
            "null argument");
    const PrimeTable& table = primes->table;
    if (bound == 0) bound = DefaultCensusBound(p, table);
    const size_t i = table.index_of(p);
    Require(i >= 2, "p must be odd");
    *checked = 0;
    *nonnegative = 0;
    for (uint64_t n : ListCandidates(p, bound, table, ToReading(reading))) {
      ++*checked;
      if (TallyWheelOracle(i - 1, n, table).balance() >= 0) ++*nonnegative;
    }
  });
}

intclust_status intclust_prime_count_write(const intclust_primes* primes, const double* xs,
                                      size_t x_count, const double* ts, size_t t_count,
                                      intclust_write_fn write, void* user, int* all_hold) {
  return Guarded([&] {
    Require(primes != nullptr && xs != nullptr && ts != nullptr, "null argument");
    const auto points = CheckPrimeCountInequality(std::vector<double>(xs, xs + x_count),
                                    std::vector<double>(ts, ts + t_count), primes->table);
    bool ok = true;
    for (const auto& pt : points) ok = ok && pt.holds;
    if (all_hold != nullptr) *all_hold = ok ? 1 : 0;
    std::ostringstream out;
    WritePrimeCountCsv(points, out);
    Emit(write, user, out.str());
  });
}

intclust_status intclust_large_class_bounds(const intclust_primes* primes, uint64_t n,
                                            uint64_t ell, uint64_t* friends_bound,
                                            int64_t* enemies_bound) {
  return Guarded([&] {
    Require(primes != nullptr && friends_bound != nullptr && enemies_bound != nullptr,
            "null argument");
    const LargeClassBounds b = LargeClassCensus(n, ell, primes->table);
    *friends_bound = b.friends_bound;
    *enemies_bound = b.enemies_bound;
  });
}

}  // extern "C"
