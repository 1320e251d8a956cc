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

// Command-line frontend over the C interface of libintclust.
//
// Exit codes: 0 success, 1 verification anomaly (or nothing found),
// 2 refused by a resource guard, 64 usage error, 70 internal failure,
// 74 I/O failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "intclust/intclust.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAnomaly = 1;
constexpr int kExitRefused = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;
constexpr int kExitIo = 74;

constexpr uint64_t kN0 = 111546435;
constexpr uint64_t kMinSieve = 100000;
constexpr uint64_t kMaxVerifiedColumn = 20;
constexpr const char* kCacheEnv = "INTCLUST_CACHE_DIR";

struct Failure {
  int exit_code;
};

int ExitCodeFor(intclust_status s) {
  switch (s) {
    case INTCLUST_OK: return kExitOk;
    case INTCLUST_REFUSED: return kExitRefused;
    case INTCLUST_INVALID_ARGUMENT:
    case INTCLUST_OUT_OF_RANGE:
    case INTCLUST_OUT_OF_DOMAIN: return kExitUsage;
    case INTCLUST_IO: return kExitIo;
    default: return kExitInternal;
  }
}

// Throws Failure after reporting a non-OK status.
void Check(intclust_status s) {
  if (s == INTCLUST_OK) return;
  std::fprintf(stderr, "intclust: %s: %s\n", intclust_status_name(s), intclust_last_error());
  throw Failure{ExitCodeFor(s)};
}

[[noreturn]] void Usage(const std::string& message) {
  std::fprintf(stderr, "intclust: %s\n", message.c_str());
  throw Failure{kExitUsage};
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") {
      file_ = stdout;
      return;
    }
    file_ = std::fopen(path.c_str(), "wb");
    if (file_ == nullptr) {
      std::fprintf(stderr, "intclust: cannot open %s: %s\n", path.c_str(), std::strerror(errno));
      throw Failure{kExitIo};
    }
    owned_ = true;
  }
  ~Output() {
    if (owned_) std::fclose(file_);
  }
  Output(const Output&) = delete;
  Output& operator=(const Output&) = delete;

  static void Write(const char* data, size_t size, void* user) {
    std::fwrite(data, 1, size, static_cast<Output*>(user)->file_);
  }
  void Print(const std::string& s) { std::fwrite(s.data(), 1, s.size(), file_); }
  void Flush() {
    if (std::fflush(file_) != 0) throw Failure{kExitIo};
  }

 private:
  FILE* file_ = nullptr;
  bool owned_ = false;
};

class Primes {
 public:
  Primes(uint64_t needed, uint64_t override_limit, const std::string& cache) {
    uint64_t limit = override_limit != 0 ? override_limit : std::max(needed, kMinSieve);
    if (cache.empty()) {
      Check(intclust_primes_create(limit, &handle_));
    } else {
      Check(intclust_primes_load_or_build(limit, cache.c_str(), &handle_));
    }
  }
  ~Primes() { intclust_primes_destroy(handle_); }
  Primes(const Primes&) = delete;
  Primes& operator=(const Primes&) = delete;
  const intclust_primes* get() const { return handle_; }

 private:
  intclust_primes* handle_ = nullptr;
};

class PartitionHandle {
 public:
  PartitionHandle() = default;
  ~PartitionHandle() { intclust_partition_destroy(handle_); }
  PartitionHandle(const PartitionHandle&) = delete;
  PartitionHandle& operator=(const PartitionHandle&) = delete;
  intclust_partition** out() { return &handle_; }
  const intclust_partition* get() const { return handle_; }

 private:
  intclust_partition* handle_ = nullptr;
};

struct Globals {
  uint64_t sieve_limit = 0;  // 0: sized per command
  std::string seed_cache;
};

std::string CachePath(const Globals& g) {
  if (!g.seed_cache.empty()) return g.seed_cache;
  if (const char* dir = std::getenv(kCacheEnv); dir != nullptr && *dir != '\0') {
    return std::string(dir) + "/intclust-primes.bin";
  }
  return {};
}

uint64_t SqrtCeil(uint64_t n) {
  auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r < n) ++r;
  return r;
}

intclust_format ParseFormat(const std::string& f) {
  return f == "json" ? INTCLUST_FORMAT_JSON : INTCLUST_FORMAT_CSV;
}

const std::map<std::string, intclust_census_reading> kReadings = {
    {"squarefree", INTCLUST_CENSUS_SQUAREFREE},
    {"exactly-three", INTCLUST_CENSUS_EXACTLY_THREE},
    {"at-least-three", INTCLUST_CENSUS_AT_LEAST_THREE},
};

// ---- commands ----

struct GreedyArgs {
  uint64_t n = 0;
  std::string mode = "accelerated";
  std::string format = "csv";
  std::string output;
  uint64_t guard = 100000;
};

int RunGreedy(const Globals& g, const GreedyArgs& a) {
  if (a.n < 2) Usage("--n must be at least 2");
  PartitionHandle part;
  if (a.mode == "reference") {
    Check(intclust_greedy(nullptr, a.n, INTCLUST_MODE_REFERENCE, a.guard, part.out()));
  } else {
    Primes primes(a.n, g.sieve_limit, CachePath(g));
    Check(intclust_greedy(primes.get(), a.n, INTCLUST_MODE_ACCELERATED, a.guard, part.out()));
  }
  Output out(a.output);
  Check(intclust_partition_write(part.get(), ParseFormat(a.format), &Output::Write, &out));
  out.Flush();
  for (size_t k = 0; k < intclust_partition_anomaly_count(part.get()); ++k) {
    uint64_t n = 0;
    uint32_t expected = 0;
    uint32_t chosen = 0;
    Check(intclust_partition_anomaly(part.get(), k, &n, &expected, &chosen));
    std::fprintf(stderr, "anomaly: n=%llu expected class %u, chose %u\n",
                 static_cast<unsigned long long>(n), expected, chosen);
  }
  return kExitOk;
}

struct VerifyArgs {
  uint64_t from = 2;
  uint64_t to = 0;
  unsigned workers = 1;
  std::string output;
  bool summary_only = false;
  bool progress = false;
};

struct VerifyWriter {
  Output* out;
  bool summary_only;
  bool progress;
  uint64_t lines = 0;

  static void Write(const char* data, size_t size, void* user) {
    auto* self = static_cast<VerifyWriter*>(user);
    const bool summary = size > 10 && std::strncmp(data, "{\"summary\"", 10) == 0;
    if (!self->summary_only || summary) Output::Write(data, size, self->out);
    if (self->progress && ++self->lines % 1000000 == 0) {
      std::fprintf(stderr, "verified %llu\n", static_cast<unsigned long long>(self->lines));
    }
  }
};

int RunVerify(const Globals& g, const VerifyArgs& a) {
  if (a.from < 2 || a.from > a.to) Usage("need 2 <= --from <= --to");
  Primes primes(a.to, g.sieve_limit, CachePath(g));
  Output out(a.output);
  VerifyWriter writer{&out, a.summary_only, a.progress};
  intclust_verify_summary summary{};
  Check(intclust_verify(primes.get(), a.from, a.to, a.workers, &VerifyWriter::Write, &writer,
                        &summary));
  out.Flush();
  return summary.anomalies == 0 && summary.unverified == 0 ? kExitOk : kExitAnomaly;
}

struct TablesArgs {
  std::string which = "n1";
  uint64_t column = 0;
  bool force = false;
  std::string format = "csv";
  std::string reading = "squarefree";
  std::string output;
};

int RunTables(const Globals& g, const TablesArgs& a) {
  Output out(a.output);
  if (a.which == "n1") {
    if (a.column != 0 && (a.column < 3 || (a.column > kMaxVerifiedColumn && !a.force))) {
      Usage("--i must lie in [3, 20] (use --force beyond 20)");
    }
    Primes primes(0, g.sieve_limit, CachePath(g));
    Check(intclust_n1_table_write(primes.get(), a.column, ParseFormat(a.format),
                                  &Output::Write, &out));
  } else {
    Primes primes(3200000, g.sieve_limit, CachePath(g));
    Check(intclust_census_table_write(primes.get(), kReadings.at(a.reading),
                                      ParseFormat(a.format), &Output::Write, &out));
  }
  out.Flush();
  return kExitOk;
}

int RunFindN0(const Globals& g, uint64_t bound) {
  Primes primes(1000000, g.sieve_limit, CachePath(g));
  uint64_t n0 = 0;
  const intclust_status s = intclust_find_n0(primes.get(), bound, &n0);
  if (s == INTCLUST_NOT_FOUND) {
    std::printf("not-found\n");
    return kExitAnomaly;
  }
  Check(s);
  std::printf("%llu\n", static_cast<unsigned long long>(n0));
  return kExitOk;
}

struct ConflictsArgs {
  uint64_t n = 0;
  std::string partition = "canonical";
  std::string csv;
  uint64_t guard = 100000;
  unsigned workers = 1;
};

void BuildPartition(const Globals& g, uint64_t n, const std::string& kind,
                    const std::string& csv, uint64_t guard, PartitionHandle& part) {
  if (!csv.empty()) {
    Check(intclust_partition_read_csv(csv.c_str(), part.out()));
    return;
  }
  if (n < 2) Usage("--n must be at least 2");
  if (kind == "greedy") {
    Check(intclust_greedy(nullptr, n, INTCLUST_MODE_REFERENCE, guard, part.out()));
    return;
  }
  Primes primes(n, g.sieve_limit, CachePath(g));
  if (kind == "exceptional") {
    Check(intclust_exceptional_partition(primes.get(), n, part.out()));
  } else {
    Check(intclust_canonical_partition(primes.get(), n, part.out()));
  }
}

int RunConflicts(const Globals& g, const ConflictsArgs& a) {
  PartitionHandle part;
  BuildPartition(g, a.n, a.partition, a.csv, a.guard, part);
  uint64_t conflicts = 0;
  Check(intclust_count_conflicts(part.get(), a.guard, a.workers, &conflicts));
  std::printf("%llu\n", static_cast<unsigned long long>(conflicts));
  return kExitOk;
}

struct DeltaArgs {
  uint64_t n = 0;
  uint32_t from = 0;
  uint32_t to = 0;
  std::string csv;
};

int RunDelta(const Globals& g, const DeltaArgs& a) {
  int64_t delta = 0;
  if (!a.csv.empty()) {
    PartitionHandle part;
    Check(intclust_partition_read_csv(a.csv.c_str(), part.out()));
    Check(intclust_move_delta(part.get(), a.from, a.to, &delta));
  } else {
    if (a.n < 3) Usage("--n must be at least 3");
    Primes primes(a.n, g.sieve_limit, CachePath(g));
    Check(intclust_canonical_move_delta(primes.get(), a.n, a.from, a.to, &delta));
  }
  std::printf("%lld\n", static_cast<long long>(delta));
  return kExitOk;
}

struct CensusArgs {
  uint64_t p = 0;
  uint64_t bound = 0;
  std::string reading = "squarefree";
  bool check_tallies = false;
};

int RunCensus(const Globals& g, const CensusArgs& a) {
  Primes primes(a.bound == 0 ? kN0 : a.bound, g.sieve_limit, CachePath(g));
  uint64_t count = 0;
  uint64_t bound = 0;
  const auto reading = kReadings.at(a.reading);
  Check(intclust_census(primes.get(), a.p, a.bound, reading, &count, &bound));
  std::printf("p,bound,count,reading\n%llu,%llu,%llu,%s\n",
              static_cast<unsigned long long>(a.p), static_cast<unsigned long long>(bound),
              static_cast<unsigned long long>(count), a.reading.c_str());
  if (!a.check_tallies) return kExitOk;
  uint64_t checked = 0;
  uint64_t nonnegative = 0;
  Check(intclust_census_nonnegative(primes.get(), a.p, bound, reading, &checked, &nonnegative));
  std::printf("checked,nonnegative\n%llu,%llu\n", static_cast<unsigned long long>(checked),
              static_cast<unsigned long long>(nonnegative));
  return nonnegative == 0 ? kExitOk : kExitAnomaly;
}

struct PrimeCountArgs {
  std::vector<double> xs;
  std::vector<double> ts = {41, 43, 47, 53};
  size_t grid = 20;
};

int RunPrimeCount(const Globals& g, PrimeCountArgs a) {
  if (a.xs.empty()) {
    // Geometric grid from n0^(2/3) to 10^7.
    if (a.grid < 2) Usage("--grid must be at least 2");
    const double lo = std::cbrt(static_cast<double>(kN0) * static_cast<double>(kN0));
    const double hi = 1e7;
    for (size_t k = 0; k < a.grid; ++k) {
      a.xs.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (a.grid - 1)));
    }
  }
  double x_max = 0;
  for (double x : a.xs) x_max = std::max(x_max, x);
  Primes primes(static_cast<uint64_t>(x_max) + 1, g.sieve_limit, CachePath(g));
  int all_hold = 0;
  Output out("");
  Check(intclust_prime_count_write(primes.get(), a.xs.data(), a.xs.size(), a.ts.data(), a.ts.size(),
                              &Output::Write, &out, &all_hold));
  out.Flush();
  return all_hold ? kExitOk : kExitAnomaly;
}

int RunFactor(const Globals& g, uint64_t n) {
  Primes primes(SqrtCeil(n) + 1, g.sieve_limit, CachePath(g));
  uint64_t ps[64];
  uint32_t es[64];
  size_t count = 0;
  Check(intclust_factorize(primes.get(), n, ps, es, 64, &count));
  uint64_t phi = 0;
  Check(intclust_totient(primes.get(), n, &phi));
  std::string line = std::to_string(n) + ":";
  for (size_t k = 0; k < count; ++k) {
    line += " " + std::to_string(ps[k]);
    if (es[k] > 1) line += "^" + std::to_string(es[k]);
  }
  std::printf("%s\nphi %llu\n", line.c_str(), static_cast<unsigned long long>(phi));
  return kExitOk;
}

int RunPi(const Globals& g, uint64_t x) {
  Primes primes(x, g.sieve_limit, CachePath(g));
  uint64_t pi = 0;
  Check(intclust_pi(primes.get(), x, &pi));
  std::printf("%llu\n", static_cast<unsigned long long>(pi));
  return kExitOk;
}

int RunInequality(const Globals& g, uint64_t n) {
  Primes primes(SqrtCeil(n) + 1, g.sieve_limit, CachePath(g));
  int holds = 0;
  Check(intclust_even_class_wins(primes.get(), n, &holds));
  std::printf("%s\n", holds ? "true" : "false");
  return kExitOk;
}

int RunCoprimeCandidate() {
  uint64_t value = 0;
  int holds = 0;
  int without_last = 0;
  Check(intclust_coprime_to_three_candidate(&value, &holds, &without_last));
  std::printf("value,holds,holds_without_43\n%llu,%d,%d\n",
              static_cast<unsigned long long>(value), holds, without_last);
  return kExitOk;
}

int RunLargeClass(const Globals& g, uint64_t n, uint64_t ell) {
  Primes primes(kN0, g.sieve_limit, CachePath(g));
  uint64_t friends = 0;
  int64_t enemies = 0;
  Check(intclust_large_class_bounds(primes.get(), n, ell, &friends, &enemies));
  std::printf("friends_bound,enemies_bound,separated\n%llu,%lld,%d\n",
              static_cast<unsigned long long>(friends), static_cast<long long>(enemies),
              static_cast<int64_t>(friends) < enemies);
  return static_cast<int64_t>(friends) < enemies ? kExitOk : kExitAnomaly;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy correlation clustering of the integers under the gcd relation"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--sieve-limit", g.sieve_limit,
                 "Prime table limit (default: sized to the command)")
      ->check(CLI::Range(uint64_t{2}, uint64_t{4000000000}));
  app.add_option("--seed-cache", g.seed_cache,
                 std::string("Persist the prime table at this path (default: $") + kCacheEnv +
                     "/intclust-primes.bin when set)");

  GreedyArgs greedy;
  auto* c_greedy = app.add_subcommand("greedy", "Greedy clustering of [2, n] as CSV or JSON");
  c_greedy->add_option("--n", greedy.n, "Largest integer")->required();
  c_greedy->add_option("--mode", greedy.mode)
      ->check(CLI::IsMember({"reference", "accelerated"}));
  c_greedy->add_option("--format", greedy.format)->check(CLI::IsMember({"csv", "json"}));
  c_greedy->add_option("--output,-o", greedy.output, "Output file (default stdout)");
  c_greedy->add_option("--guard", greedy.guard, "Largest n for reference mode");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Check that each n joins its smallest-prime class");
  c_verify->add_option("--from", verify.from)->required();
  c_verify->add_option("--to", verify.to)->required();
  c_verify->add_option("--workers", verify.workers)->check(CLI::PositiveNumber);
  c_verify->add_option("--output,-o", verify.output, "JSONL destination (default stdout)");
  c_verify->add_flag("--summary-only", verify.summary_only, "Emit only the summary line");
  c_verify->add_flag("--progress", verify.progress, "Report progress on stderr");

  TablesArgs tables;
  auto* c_tables = app.add_subcommand("tables", "Threshold table or three-prime census");
  c_tables->add_option("--which", tables.which)->check(CLI::IsMember({"n1", "census"}));
  c_tables->add_option("--i", tables.column, "Single column i (all t)");
  c_tables->add_flag("--force", tables.force, "Allow --i above 20");
  c_tables->add_option("--format", tables.format)->check(CLI::IsMember({"csv", "json"}));
  c_tables->add_option("--reading", tables.reading)
      ->check(CLI::IsMember({"squarefree", "exactly-three", "at-least-three"}));
  c_tables->add_option("--output,-o", tables.output);

  uint64_t n0_bound = 200000000;
  auto* c_find = app.add_subcommand("find-n0", "Smallest n divisible by 3 that leaves class 2");
  c_find->add_option("--bound", n0_bound);

  ConflictsArgs conflicts;
  auto* c_conf = app.add_subcommand("conflicts", "Count conflicts of a partition");
  c_conf->add_option("--n", conflicts.n);
  c_conf->add_option("--partition", conflicts.partition)
      ->check(CLI::IsMember({"canonical", "exceptional", "greedy"}));
  c_conf->add_option("--csv", conflicts.csv, "Read the partition from a CSV file");
  c_conf->add_option("--guard", conflicts.guard);
  c_conf->add_option("--workers", conflicts.workers)->check(CLI::PositiveNumber);

  DeltaArgs delta;
  auto* c_delta = app.add_subcommand("delta", "Conflict change from moving the largest element");
  c_delta->add_option("--n", delta.n, "Use the smallest-prime partition of [2, n]");
  c_delta->add_option("--csv", delta.csv, "Use a partition CSV instead");
  c_delta->add_option("--from", delta.from)->required();
  c_delta->add_option("--to", delta.to, "Target class (0: new class)")->required();

  CensusArgs census;
  auto* c_census = app.add_subcommand("census", "Count three-prime candidates for one prime");
  c_census->add_option("--p", census.p)->required();
  c_census->add_option("--bound", census.bound, "Exclusive bound (default: table cell or n0)");
  c_census->add_option("--reading", census.reading)
      ->check(CLI::IsMember({"squarefree", "exactly-three", "at-least-three"}));
  c_census->add_flag("--check-tallies", census.check_tallies,
                     "Also tally every candidate against the class below");

  PrimeCountArgs prime_count;
  auto* c_prime_count = app.add_subcommand("prime-count", "Prime counting inequality on a grid");
  c_prime_count->add_option("--x", prime_count.xs, "x values (default: geometric grid)");
  c_prime_count->add_option("--t", prime_count.ts, "t values");
  c_prime_count->add_option("--grid", prime_count.grid, "Points in the default x grid");

  uint64_t factor_n = 0;
  auto* c_factor = app.add_subcommand("factor", "Factorization and totient");
  c_factor->add_option("--n", factor_n)->required()->check(CLI::Range(uint64_t{2}, UINT64_MAX));

  uint64_t pi_x = 0;
  auto* c_pi = app.add_subcommand("pi", "Prime counting function");
  c_pi->add_option("--x", pi_x)->required();

  uint64_t ineq_n = 0;
  auto* c_ineq = app.add_subcommand("inequality", "Does n leave class 2 for the even class");
  c_ineq->add_option("--n", ineq_n)->required()->check(CLI::Range(uint64_t{2}, UINT64_MAX));

  auto* c_coprime = app.add_subcommand("coprime-candidate", "First candidate coprime to 3");

  uint64_t prop_n = 0;
  uint64_t prop_ell = 0;
  auto* c_prop = app.add_subcommand("large-class", "Friend and enemy bounds for large primes");
  c_prop->add_option("--n", prop_n)->required();
  c_prop->add_option("--ell", prop_ell, "Class index l")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*c_greedy) return RunGreedy(g, greedy);
    if (*c_verify) return RunVerify(g, verify);
    if (*c_tables) return RunTables(g, tables);
    if (*c_find) return RunFindN0(g, n0_bound);
    if (*c_conf) return RunConflicts(g, conflicts);
    if (*c_delta) return RunDelta(g, delta);
    if (*c_census) return RunCensus(g, census);
    if (*c_prime_count) return RunPrimeCount(g, prime_count);
    if (*c_factor) return RunFactor(g, factor_n);
    if (*c_pi) return RunPi(g, pi_x);
    if (*c_ineq) return RunInequality(g, ineq_n);
    if (*c_coprime) return RunCoprimeCandidate();
    if (*c_prop) return RunLargeClass(g, prop_n, prop_ell);
  } catch (const Failure& f) {
    return f.exit_code;
  }
  return kExitUsage;
}
