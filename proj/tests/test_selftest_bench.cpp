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

#include <doctest.h>

#include <sstream>

#include "mlcount/bench.hpp"
#include "mlcount/selftest.hpp"
#include "test_util.hpp"

using namespace mlcount;
using testutil::F;

TEST_CASE("fixture polynomials at small q") {
    CHECK(two_factor_zero_count(2) == 112);
    CHECK(two_factor_zero_count(3) == 1491);
    CHECK(two_factor_zero_count(5) == 34285);
    CHECK(two_factor_zero_count(7) == 259567);
    CHECK(two_factor_square_count(3) == 384);
    CHECK(two_factor_nonsquare_count(3) == 312);
    CHECK(three_factor_zero_count(2) == 232);
    CHECK(three_factor_zero_count(3) == 4725);

    // the three reference values at each odd q partition q^7
    for (std::uint64_t q : {3ull, 5ull, 7ull}) {
        const BigInt half((unsigned long)((q - 1) / 2));
        CHECK(two_factor_zero_count(q) + half * two_factor_square_count(q) +
                  half * two_factor_nonsquare_count(q) ==
              big_pow(q, 7));
    }

    // and the double-sum form partitions q^8 together with the zero count
    for (std::uint32_t q : {2u, 3u, 5u}) {
        auto f = F(q);
        BigInt total = three_factor_zero_count(q);
        for (std::uint32_t a = 1; a < q; ++a) total += three_factor_nonzero_count(*f, a);
        CHECK(total == big_pow(q, 8));
    }
}

TEST_CASE("instance generator respects its options") {
    InstanceGen gen(5);
    InstanceGen::Options square;
    square.square = true;
    for (int i = 0; i < 10; ++i) {
        SystemSpec s = gen.next(square);
        CHECK(s.k() == s.m());
        CHECK(s.rank() == s.k());
    }
    InstanceGen::Options diag;
    diag.diagonal_pair = true;
    for (int i = 0; i < 10; ++i) CHECK(has_diagonal_pair_shape(gen.next(diag)));
    InstanceGen::Options capped;
    capped.max_points = 4096;
    for (int i = 0; i < 10; ++i) {
        SystemSpec s = gen.next(capped);
        CHECK(big_pow(s.field().q(), s.n()) <= 4096);
    }
}

TEST_CASE("selftest passes and is deterministic") {
    SelftestOptions opts;
    opts.max_bits = 14;
    opts.random_instances = 12;
    const auto a = run_selftest(opts);
    const auto b = run_selftest(opts);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].ok());
        CHECK(a[i].name == b[i].name);
        CHECK(a[i].passed == b[i].passed);
        CHECK(a[i].failed == b[i].failed);
    }
}

TEST_CASE("bench compares methods and writes CSV") {
    CountQuery q = parse_problem(testutil::read_data_file("two_factor_q2.json"));
    BenchReport report = run_bench(q, "two_factor_q2", 3, /*include_oracle=*/true);
    REQUIRE(report.samples.size() == 2);
    CHECK(report.samples[0].method == "general-IE");
    CHECK(report.samples[1].method == "oracle");
    CHECK(report.samples[0].count == report.samples[1].count);
    CHECK(report.samples[0].count == 112);
    for (const auto& s : report.samples) {
        CHECK(s.ns.size() == 3);
        CHECK(s.median_ns >= 1);
        CHECK(s.speedup > 0.0);
    }

    std::ostringstream csv;
    write_bench_csv(report, csv);
    const std::string text = csv.str();
    CHECK(text.rfind("problem,method,count,ns,median_ns,speedup\n", 0) == 0);
    int lines = 0;
    for (char ch : text)
        if (ch == '\n') ++lines;
    CHECK(lines == 1 + 2 * 3);

    BenchReport solo = run_bench(q, "two_factor_q2", 1, /*include_oracle=*/false);
    REQUIRE(solo.samples.size() == 1);
    CHECK(solo.samples[0].speedup == 1.0);
}
