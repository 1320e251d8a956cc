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

// Text renderings of results. JSON objects are single-line with a fixed key
// order so identical inputs give identical bytes.

#ifndef INTCLUST_FORMATS_H_
#define INTCLUST_FORMATS_H_

#include <ostream>
#include <span>
#include <string>

#include "intclust/greedy.h"
#include "intclust/partition.h"
#include "intclust/threshold.h"

namespace intclust {

// {"n":..,"spf_index":..,"deltas":[..],"s_i":..,"chosen_j":..,"expected_j":..,"status":".."}
std::string VerifyRecordJson(const VerifyRecord& rec);
// {"summary":{...}}, emitted after the records.
std::string VerifySummaryJson(const VerifySummary& summary);

// {"n":..,"classes":[[2,4,..],[3,..],..]}
std::string PartitionJson(const Partition& p);

// Columns i,p_i,t,n1,bound_covers_all.
void WriteN1Csv(std::span<const ThresholdRecord> records, std::ostream& out);
std::string N1Json(std::span<const ThresholdRecord> records);

// Columns p,bound,count,reading.
void WriteCensusCsv(std::span<const CandidateCensus> rows, std::ostream& out);
std::string CensusJson(std::span<const CandidateCensus> rows);

// Columns x,t,exact,lhs,rhs,margin,holds,bound_lhs,bound_rhs,bounds_hold,bounds_bracket.
void WritePrimeCountCsv(std::span<const PrimeCountPoint> points, std::ostream& out);

}  // namespace intclust

#endif  // INTCLUST_FORMATS_H_
