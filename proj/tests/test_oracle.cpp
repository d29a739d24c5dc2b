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

#include "mlcount/oracle.hpp"
#include "mlcount/selftest.hpp"
#include "test_util.hpp"

using namespace mlcount;
using testutil::F;

TEST_CASE("brute counts on tiny systems") {
    SystemSpec xy = testutil::make_system(F(3), 2, {{0, 1}}, {{1}});
    CHECK(brute_count(CountQuery{xy, 0}) == 5);

    // the zero polynomial vanishes everywhere
    SystemSpec zero = testutil::make_system(F(3), 2, {{0}, {1}}, {{0, 0}}, /*relaxed=*/true);
    CHECK(brute_count(CountQuery{zero, 0}) == 9);
    CHECK(brute_count(CountQuery{zero, 1}) == 0);
}

TEST_CASE("brute system counts") {
    SystemSpec v1 = fixture_two_factor(F(2));
    const auto rows = testutil::iota_rows(2);
    const std::vector<std::uint32_t> b00 = {0, 0};
    CHECK(brute_count_system(v1, rows, b00) == count_system(v1, rows, b00));

    // a single row with b = 0 is the k = 1 zero count
    const std::vector<int> row0 = {0};
    const std::vector<std::uint32_t> b0 = {0};
    CHECK(brute_count_system(v1, row0, b0) == count_single(v1, 0, 0));

    // no constraints at all
    CHECK(brute_count_system(v1, std::vector<int>{}, std::vector<std::uint32_t>{}) ==
          big_pow(2, 7));
}

TEST_CASE("value distribution") {
    // f = X1 over F_3 is a bijection on each fiber
    SystemSpec lin = testutil::make_system(F(3), 1, {{0}}, {{1}});
    const auto d1 = value_distribution(lin);
    CHECK(d1 == std::vector<BigInt>{1, 1, 1});

    SystemSpec xy2 = testutil::make_system(F(2), 2, {{0, 1}}, {{1}});
    const auto d2 = value_distribution(xy2);
    CHECK(d2 == std::vector<BigInt>{3, 1});

    // the two-factor reference system at q = 3 splits 3^7 as 1491/384/312
    SystemSpec v1 = fixture_two_factor(F(3));
    const auto d3 = value_distribution(v1);
    CHECK(d3 == std::vector<BigInt>{1491, 384, 312});
    BigInt total = 0;
    for (const auto& c : d3) total += c;
    CHECK(total == big_pow(3, 7));

    for (std::uint32_t a = 0; a < 3; ++a)
        CHECK(brute_count(CountQuery{v1, a}) == d3[a]);
}

TEST_CASE("guard and force") {
    SystemSpec v1 = fixture_two_factor(F(3)); // 3^7 = 2187 points
    OracleOptions tight;
    tight.max_points = 1000;
    CHECK_THROWS_AS(brute_count(CountQuery{v1, 0}, tight), OracleTooLarge);
    tight.force = true;
    CHECK(brute_count(CountQuery{v1, 0}, tight) == 1491);
}

TEST_CASE("threaded enumeration is deterministic") {
    SystemSpec v2 = fixture_three_factor(F(3)); // 3^8 = 6561 points
    OracleOptions serial, parallel;
    parallel.threads = 3;
    CHECK(value_distribution(v2, serial) == value_distribution(v2, parallel));
    const auto rows = testutil::iota_rows(3);
    const std::vector<std::uint32_t> b = {0, 1, 2};
    CHECK(brute_count_system(v2, rows, b, serial) ==
          brute_count_system(v2, rows, b, parallel));
}
