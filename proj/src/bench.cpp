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

#include "mlcount/bench.hpp"

#include <algorithm>
#include <ostream>

namespace mlcount {
namespace {

std::int64_t median(std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

BenchSample time_method(const CountQuery& query, Method method, int repeat,
                        const OracleOptions& opts) {
    BenchSample s;
    for (int r = 0; r < repeat; ++r) {
        CountResult res = count(query, method, opts);
        if (r == 0) {
            s.method = res.method;
            s.count = res.count;
        } else if (res.count != s.count) {
            throw CountMismatch("method " + res.method + " is not deterministic");
        }
        // clamp to 1ns so ratios stay finite for sub-resolution runs
        s.ns.push_back(std::max<std::int64_t>(res.elapsed.count(), 1));
    }
    s.median_ns = median(s.ns);
    return s;
}

} // namespace

BenchReport run_bench(const CountQuery& query, const std::string& problem_id, int repeat,
                      bool include_oracle, const OracleOptions& oracle_opts) {
    if (repeat < 1) throw SchemaError("repeat must be >= 1");
    BenchReport report;
    report.problem_id = problem_id;
    report.samples.push_back(time_method(query, Method::Auto, repeat, oracle_opts));
    if (include_oracle)
        report.samples.push_back(time_method(query, Method::Oracle, repeat, oracle_opts));

    // correctness gate before any timing is reported
    for (const BenchSample& s : report.samples)
        if (s.count != report.samples[0].count)
            throw CountMismatch("methods disagree on " + problem_id + ": " +
                                report.samples[0].method + " = " +
                                report.samples[0].count.get_str() + " vs " + s.method + " = " +
                                s.count.get_str());

    std::int64_t slowest = 1;
    for (const BenchSample& s : report.samples) slowest = std::max(slowest, s.median_ns);
    for (BenchSample& s : report.samples)
        s.speedup = static_cast<double>(slowest) / static_cast<double>(s.median_ns);
    return report;
}

void write_bench_csv(const BenchReport& report, std::ostream& out) {
    out << "problem,method,count,ns,median_ns,speedup\n";
    for (const BenchSample& s : report.samples)
        for (std::int64_t ns : s.ns)
            out << report.problem_id << ',' << s.method << ',' << s.count.get_str() << ',' << ns
                << ',' << s.median_ns << ',' << s.speedup << '\n';
}

} // namespace mlcount
