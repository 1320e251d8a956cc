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

#include "intclust/formats.h"

#include <cstdio>

#include "json.hpp"

namespace intclust {

using ordered_json = nlohmann::ordered_json;

std::string VerifyRecordJson(const VerifyRecord& rec) {
  ordered_json j;
  j["n"] = rec.n;
  j["spf_index"] = rec.spf_index;
  j["deltas"] = rec.deltas;
  j["s_i"] = rec.target_size;
  j["chosen_j"] = rec.chosen;
  j["expected_j"] = rec.expected;
  j["status"] = VerifyStatusName(rec.status);
  return j.dump();
}

std::string VerifySummaryJson(const VerifySummary& summary) {
  ordered_json anomalies = ordered_json::array();
  for (const auto& a : summary.anomalies) {
    anomalies.push_back({{"n", a.n}, {"expected_j", a.expected}, {"chosen_j", a.chosen}});
  }
  ordered_json s;
  s["from"] = summary.from;
  s["to"] = summary.to;
  s["checked"] = summary.checked;
  s["passed"] = summary.passed;
  s["auto_passed"] = summary.auto_passed;
  s["anomalies"] = std::move(anomalies);
  s["unverified"] = summary.unverified;
  s["all_pass"] = summary.all_pass();
  ordered_json j;
  j["summary"] = std::move(s);
  return j.dump();
}

std::string PartitionJson(const Partition& p) {
  ordered_json j;
  j["n"] = p.n();
  j["classes"] = p.Classes();
  return j.dump();
}

void WriteN1Csv(std::span<const ThresholdRecord> records, std::ostream& out) {
  out << "i,p_i,t,n1,bound_covers_all\n";
  for (const auto& r : records) {
    out << r.i << ',' << r.p_i << ',' << r.t << ',' << r.n1 << ','
        << (r.bound_covers_all ? 1 : 0) << '\n';
  }
}

std::string N1Json(std::span<const ThresholdRecord> records) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : records) {
    ordered_json j;
    j["i"] = r.i;
    j["j"] = r.j;
    j["t"] = r.t;
    j["p_i"] = r.p_i;
    j["n1"] = r.n1;
    j["product"] = ToString(static_cast<int128>(r.product));
    j["bound_covers_all"] = r.bound_covers_all;
    j["threshold"] = r.threshold.ToString();
    rows.push_back(std::move(j));
  }
  return rows.dump();
}

void WriteCensusCsv(std::span<const CandidateCensus> rows, std::ostream& out) {
  out << "p,bound,count,reading\n";
  for (const auto& r : rows) {
    out << r.p << ',' << r.bound << ',' << r.count << ',' << CensusReadingName(r.reading)
        << '\n';
  }
}

std::string CensusJson(std::span<const CandidateCensus> rows) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    out.push_back({{"p", r.p},
                   {"bound", r.bound},
                   {"count", r.count},
                   {"reading", CensusReadingName(r.reading)}});
  }
  return out.dump();
}

void WritePrimeCountCsv(std::span<const PrimeCountPoint> points, std::ostream& out) {
  out << "x,t,exact,lhs,rhs,margin,holds,bound_lhs,bound_rhs,bounds_hold,bounds_bracket\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::string(buf);
  };
  for (const auto& p : points) {
    out << num(p.x) << ',' << num(p.t) << ',' << p.exact << ',' << p.lhs << ',' << p.rhs
        << ',' << (p.lhs - p.rhs) << ',' << p.holds << ',' << num(p.bound_lhs) << ','
        << num(p.bound_rhs) << ',' << p.bounds_hold << ',' << p.bounds_bracket << '\n';
  }
}

}  // namespace intclust
