/* Copyright 2026 The intclust Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to libintclust.
 *
 * Every function returns an intclust_status. On failure the message is
 * available from intclust_last_error() on the calling thread until the next
 * call. Handles are opaque; each *_create / producer has a matching
 * *_destroy. Text output goes through a caller-supplied write callback.
 */

#ifndef INTCLUST_INTCLUST_H_
#define INTCLUST_INTCLUST_H_

#include <stddef.h>
#include <stdint.h>

#if defined(INTCLUST_BUILDING_LIBRARY)
#define INTCLUST_API __attribute__((visibility("default")))
#else
#define INTCLUST_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum intclust_status {
  INTCLUST_OK = 0,
  INTCLUST_INVALID_ARGUMENT = 1,
  INTCLUST_OUT_OF_RANGE = 2,
  INTCLUST_OUT_OF_DOMAIN = 3,
  INTCLUST_REFUSED = 4,
  INTCLUST_INCONSISTENT = 5,
  INTCLUST_UNSUPPORTED = 6,
  INTCLUST_NOT_FOUND = 7,
  INTCLUST_DEGENERATE = 8,
  INTCLUST_IO = 9,
  INTCLUST_INTERNAL = 100
} intclust_status;

typedef enum intclust_format {
  INTCLUST_FORMAT_CSV = 0,
  INTCLUST_FORMAT_JSON = 1
} intclust_format;

typedef enum intclust_mode {
  INTCLUST_MODE_REFERENCE = 0,
  INTCLUST_MODE_ACCELERATED = 1
} intclust_mode;

typedef enum intclust_census_reading {
  INTCLUST_CENSUS_SQUAREFREE = 0,
  INTCLUST_CENSUS_EXACTLY_THREE = 1,
  INTCLUST_CENSUS_AT_LEAST_THREE = 2
} intclust_census_reading;

typedef struct intclust_primes intclust_primes;
typedef struct intclust_partition intclust_partition;

/* Receives output bytes; not NUL-terminated. */
typedef void (*intclust_write_fn)(const char* data, size_t size, void* user);

INTCLUST_API const char* intclust_last_error(void);
INTCLUST_API const char* intclust_status_name(intclust_status status);
INTCLUST_API const char* intclust_version(void);

/* ---- primes ---- */

INTCLUST_API intclust_status intclust_primes_create(uint64_t limit, intclust_primes** out);
/* Reuses the cache at `path` when it covers `limit`, otherwise sieves and
 * rewrites it. */
INTCLUST_API intclust_status intclust_primes_load_or_build(uint64_t limit, const char* path,
                                                           intclust_primes** out);
INTCLUST_API void intclust_primes_destroy(intclust_primes* primes);
INTCLUST_API uint64_t intclust_primes_limit(const intclust_primes* primes);
INTCLUST_API intclust_status intclust_pi(const intclust_primes* primes, uint64_t x,
                                         uint64_t* out);
INTCLUST_API intclust_status intclust_totient(const intclust_primes* primes, uint64_t n,
                                              uint64_t* out);
/* Writes up to `capacity` prime/exponent pairs; *count is the number of
 * distinct primes (which may exceed capacity). */
INTCLUST_API intclust_status intclust_factorize(const intclust_primes* primes, uint64_t n,
                                                uint64_t* prime_out, uint32_t* exponent_out,
                                                size_t capacity, size_t* count);

/* ---- partitions ---- */

/* Greedy clustering of [2, n]. Reference mode ignores `primes` (may be NULL)
 * and refuses n above `guard`; accelerated mode needs n <= the sieve limit. */
INTCLUST_API intclust_status intclust_greedy(const intclust_primes* primes, uint64_t n,
                                             intclust_mode mode, uint64_t guard,
                                             intclust_partition** out);
INTCLUST_API intclust_status intclust_canonical_partition(const intclust_primes* primes,
                                                          uint64_t n, intclust_partition** out);
INTCLUST_API intclust_status intclust_exceptional_partition(const intclust_primes* primes,
                                                            uint64_t n,
                                                            intclust_partition** out);
INTCLUST_API intclust_status intclust_partition_from_labels(const uint32_t* labels,
                                                            size_t count,
                                                            intclust_partition** out);
INTCLUST_API intclust_status intclust_partition_read_csv(const char* path,
                                                         intclust_partition** out);
INTCLUST_API void intclust_partition_destroy(intclust_partition* partition);

INTCLUST_API uint64_t intclust_partition_n(const intclust_partition* partition);
INTCLUST_API size_t intclust_partition_class_count(const intclust_partition* partition);
INTCLUST_API intclust_status intclust_partition_label(const intclust_partition* partition,
                                                      uint64_t m, uint32_t* out);
/* Greedy runs only: anomalies (n, expected class, chosen class) and the
 * summed per-step conflict increments. */
INTCLUST_API size_t intclust_partition_anomaly_count(const intclust_partition* partition);
INTCLUST_API intclust_status intclust_partition_anomaly(const intclust_partition* partition,
                                                        size_t index, uint64_t* n,
                                                        uint32_t* expected, uint32_t* chosen);
INTCLUST_API intclust_status intclust_partition_write(const intclust_partition* partition,
                                                      intclust_format format,
                                                      intclust_write_fn write, void* user);

/* Conflicts by pairwise enumeration; refused above `guard`. */
INTCLUST_API intclust_status intclust_count_conflicts(const intclust_partition* partition,
                                                      uint64_t guard, unsigned workers,
                                                      uint64_t* out);
/* Conflict change from moving the largest element n out of `from` into `to`
 * (0 for a new class), with tallies from a direct gcd scan. */
INTCLUST_API intclust_status intclust_move_delta(const intclust_partition* partition,
                                                 uint32_t from, uint32_t to, int64_t* out);
/* The same for the smallest-prime-factor partition of [2, n], from exact
 * counts; works up to the sieve limit. */
INTCLUST_API intclust_status intclust_canonical_move_delta(const intclust_primes* primes,
                                                           uint64_t n, uint32_t from,
                                                           uint32_t to, int64_t* out);

/* ---- verification ---- */

typedef struct intclust_verify_summary {
  uint64_t checked;
  uint64_t passed;
  uint64_t auto_passed;
  uint64_t anomalies;
  uint64_t unverified;
  uint64_t first_anomaly; /* 0 when there is none */
} intclust_verify_summary;

/* Checks each n in [from, to] against the smallest-prime-factor partition
 * of [2, n-1]. With `write` set, emits one JSON line per n and a summary
 * line, in increasing n for any worker count. */
INTCLUST_API intclust_status intclust_verify(const intclust_primes* primes, uint64_t from,
                                             uint64_t to, unsigned workers,
                                             intclust_write_fn write, void* user,
                                             intclust_verify_summary* summary);

/* ---- thresholds ---- */

/* Odd n divisible by 3: *out = 1 when n leaves class 2 for the even class. */
INTCLUST_API intclust_status intclust_even_class_wins(const intclust_primes* primes,
                                                         uint64_t n, int* out);
/* INTCLUST_NOT_FOUND when nothing qualifies up to `bound`. */
INTCLUST_API intclust_status intclust_find_n0(const intclust_primes* primes, uint64_t bound,
                                              uint64_t* out);
INTCLUST_API intclust_status intclust_coprime_to_three_candidate(uint64_t* value, int* holds,
                                                int* holds_without_last);

typedef struct intclust_n1_record {
  uint64_t i;
  uint64_t j;
  uint64_t t;
  uint64_t p_i;
  uint64_t n1;
  int bound_covers_all;
} intclust_n1_record;

INTCLUST_API intclust_status intclust_n1_value(const intclust_primes* primes, uint64_t i,
                                               uint64_t j, uint64_t t,
                                               intclust_n1_record* out);
/* column_i == 0: every displayed cell; otherwise all cells (i, i-1, t). */
INTCLUST_API intclust_status intclust_n1_table_write(const intclust_primes* primes,
                                                     uint64_t column_i, intclust_format format,
                                                     intclust_write_fn write, void* user);

/* bound == 0 selects the default bound for p. */
INTCLUST_API intclust_status intclust_census(const intclust_primes* primes, uint64_t p,
                                             uint64_t bound, intclust_census_reading reading,
                                             uint64_t* count, uint64_t* bound_used);
/* Rows for p = 19, 23, 29, 31, 37, 41, 43 at their default bounds. */
INTCLUST_API intclust_status intclust_census_table_write(const intclust_primes* primes,
                                                         intclust_census_reading reading,
                                                         intclust_format format,
                                                         intclust_write_fn write, void* user);
/* Candidates for p whose tally against class i-1 is nonnegative, where
 * p = p_i; *checked is the number of candidates examined. */
INTCLUST_API intclust_status intclust_census_nonnegative(const intclust_primes* primes,
                                                         uint64_t p, uint64_t bound,
                                                         intclust_census_reading reading,
                                                         uint64_t* checked,
                                                         uint64_t* nonnegative);

/* CSV report over the grid; *all_hold = 1 when every point holds. */
INTCLUST_API intclust_status intclust_prime_count_write(const intclust_primes* primes,
                                                   const double* xs, size_t x_count,
                                                   const double* ts, size_t t_count,
                                                   intclust_write_fn write, void* user,
                                                   int* all_hold);

INTCLUST_API intclust_status intclust_large_class_bounds(const intclust_primes* primes,
                                                         uint64_t n, uint64_t ell,
                                                         uint64_t* friends_bound,
                                                         int64_t* enemies_bound);

#ifdef __cplusplus
}
#endif

#endif /* INTCLUST_INTCLUST_H_ */
