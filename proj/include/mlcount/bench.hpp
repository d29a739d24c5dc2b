// Copyright 2026 The mlcount Authors
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

#ifndef MLCOUNT_BENCH_HPP_
#define MLCOUNT_BENCH_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mlcount/counting.hpp"

namespace mlcount {

struct BenchSample {
    std::string method;
    BigInt count;
    std::vector<std::int64_t> ns; // one wall time per run
    std::int64_t median_ns = 0;
    double speedup = 1.0; // slowest median / this median
};

struct BenchReport {
    std::string problem_id;
    std::vector<BenchSample> samples;
};

/// Times the formula path (auto-dispatched) and, unless skipped, the oracle,
/// repeat times each.  Counts across methods must agree; a disagreement is a
/// correctness failure reported as CountMismatch.
BenchReport run_bench(const CountQuery& query, const std::string& problem_id, int repeat,
                      bool include_oracle, const OracleOptions& oracle_opts = {});

/// CSV rows: problem,method,count,ns,median_ns,speedup (one row per run).
void write_bench_csv(const BenchReport& report, std::ostream& out);

} // namespace mlcount

#endif // MLCOUNT_BENCH_HPP_
