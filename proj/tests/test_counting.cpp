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

#include <algorithm>

#include "mlcount/oracle.hpp"
#include "mlcount/selftest.hpp"
#include "test_util.hpp"

using namespace mlcount;
using testutil::F;

namespace {

// Literal joint-system count: iterate every assignment of the free variables
// (the variables in the complement blocks), force each pivot-block product,
// and add the per-block solution counts.  Exponentially slower than the
// production path and kept deliberately naive; the production path collapses
// this sum over block values.
BigInt literal_count_system(const SystemSpec& sys, std::span<const int> rows,
                            std::span<const std::uint32_t> b) {
    const Field& f = sys.field();
    const SubmatrixChoice choice = choose_submatrix(sys.coeffs(), rows);
    const Partition& part = sys.partition();
    const int l = static_cast<int>(rows.size());
    const std::vector<int> free_vars = free_support(part, choice.complement_cols);

    std::vector<std::uint32_t> c(static_cast<std::size_t>(l), 0);
    for (int t = 0; t < l; ++t)
        for (int j = 0; j < l; ++j)
            c[t] = f.add(c[t], f.mul(choice.b_inv.at(t, j), b[j]));

    std::vector<std::uint32_t> assign(free_vars.size(), 0);
    BigInt total = 0;
    while (true) {
        BigInt term = 1;
        for (int t = 0; t < l; ++t) {
            std::uint32_t w = c[t];
            for (std::size_t j = 0; j < choice.complement_cols.size(); ++j) {
                std::uint32_t blockprod = 1;
                for (int tau : part.blocks()[choice.complement_cols[j]]) {
                    const auto pos = std::find(free_vars.begin(), free_vars.end(), tau) -
                                     free_vars.begin();
                    blockprod = f.mul(blockprod, assign[static_cast<std::size_t>(pos)]);
                }
                w = f.sub(w, f.mul(choice.sigma.at(t, static_cast<int>(j)), blockprod));
            }
            term *= block_product_count(f, part.block_size(choice.col_set[t]), w == 0);
        }
        total += term;

        std::size_t pos = 0;
        while (pos < assign.size() && ++assign[pos] == f.q()) assign[pos++] = 0;
        if (pos == assign.size()) break;
    }
    return total;
}

} // namespace

TEST_CASE("block product count") {
    CHECK(block_product_count(*F(5), 1, false) == 1);
    CHECK(block_product_count(*F(3), 2, false) == 2);
    // frozen from brute force over F_2^3: tuples containing a zero
    CHECK(testutil::brute_block_product(*F(2), 3, 0) == 7);
    CHECK(block_product_count(*F(2), 3, true) == 7);

    for (auto f : {F(2), F(3), F(2, 2), F(5), F(3, 2)})
        for (int d = 1; d <= 5; ++d) {
            const BigInt zero = block_product_count(*f, d, true);
            const BigInt nonzero = block_product_count(*f, d, false);
            CHECK(zero == testutil::brute_block_product(*f, d, 0));
            for (std::uint32_t w = 1; w < f->q(); ++w)
                CHECK(nonzero == testutil::brute_block_product(*f, d, w));
            // conservation within a block
            CHECK(zero + BigInt(f->q() - 1) * nonzero == big_pow(f->q(), d));
            // the kappa form of the same number
            const BigInt excess = big_pow(f->q(), d - 1) - big_pow(f->q() - 1, d - 1);
            CHECK(zero == big_pow(f->q(), d - 1) + BigInt(f->q() - 1) * excess);
            CHECK(nonzero == big_pow(f->q(), d - 1) - excess);
            BlockDistribution dist = block_distribution(*f, d);
            CHECK(dist.count_zero == zero);
            CHECK(dist.count_each_nonzero == nonzero);
        }
}

TEST_CASE("single-factor count") {
    // f = X1 X2 over F_3: pairs with a zero coordinate
    SystemSpec xy = testutil::make_system(F(3), 2, {{0, 1}}, {{1}});
    CHECK(count_single(xy, 0, 0) == 5);

    // a singleton block with nonzero coefficient forces the count to q^{n-1}
    for (auto f : {F(2), F(3), F(5)}) {
        SystemSpec s = testutil::make_system(f, 3, {{0, 1}, {2}}, {{1, 1}});
        for (std::uint32_t a = 0; a < f->q(); ++a)
            CHECK(count_single(s, 0, a) == big_pow(f->q(), 2));
    }

    // X1 X2 + X5 X6 X7 over F_2 against the exhaustive oracle
    SystemSpec v1row = testutil::make_system(F(2), 7, {{0, 1}, {2, 3}, {4, 5, 6}}, {{1, 0, 1}});
    CHECK(count_single(v1row, 0, 0) ==
          brute_count(CountQuery{v1row, 0}));

    // zero row: the zero polynomial
    SystemSpec zrow = testutil::make_system(F(3), 2, {{0}, {1}}, {{0, 0}}, /*relaxed=*/true);
    CHECK(count_single(zrow, 0, 0) == big_pow(3, 2));
    CHECK(count_single(zrow, 0, 1) == 0);

    // randomized single rows vs oracle
    InstanceGen gen(123);
    InstanceGen::Options opts;
    opts.fixed_k = 1;
    opts.max_points = 1 << 14;
    for (int i = 0; i < 20; ++i) {
        SystemSpec sys = gen.next(opts);
        const auto dist = value_distribution(sys);
        for (std::uint32_t a = 0; a < sys.field().q(); ++a)
            CHECK(count_single(sys, 0, a) == dist[a]);
    }
}

TEST_CASE("joint system count") {
    // identity matrix, blocks of sizes 1 and 2, b = (1, 1):
    // block 1 forced to a single value, block 2 contributes (q-1)^(2-1)
    SystemSpec id = testutil::make_system(F(3), 3, {{0}, {1, 2}}, {{1, 0}, {0, 1}});
    const auto rows = testutil::iota_rows(2);
    const std::vector<std::uint32_t> b11 = {1, 1};
    CHECK(count_system(id, rows, b11) == 2);
    // l = m: the count is the product of forced block counts
    CHECK(count_system(id, rows, b11) ==
          block_product_count(*F(3), 1, false) * block_product_count(*F(3), 2, false));

    // reference two-factor system vs the exhaustive oracle
    SystemSpec v1 = fixture_two_factor(F(2));
    const std::vector<std::uint32_t> b00 = {0, 0};
    CHECK(count_system(v1, rows, b00) == brute_count_system(v1, rows, b00));

    CHECK_THROWS_AS(count_system(id, rows, std::vector<std::uint32_t>{0}), ShapeMismatch);
}

TEST_CASE("collapsed sum equals the literal pointwise sum and the oracle") {
    InstanceGen gen(321);
    InstanceGen::Options opts;
    opts.max_points = 1 << 12;
    for (int i = 0; i < 25; ++i) {
        SystemSpec sys = gen.next(opts);
        const int k = sys.k();
        const auto rows = testutil::iota_rows(k);
        std::vector<std::uint32_t> b(static_cast<std::size_t>(k));
        for (auto& v : b) v = static_cast<std::uint32_t>(gen.uniform(0, sys.field().q() - 1));
        const BigInt fast = count_system(sys, rows, b);
        CHECK(fast == literal_count_system(sys, rows, b));
        CHECK(fast == brute_count_system(sys, rows, b));
    }
}

TEST_CASE("zero-target product count") {
    // k = 1 reduces to the single-factor closed form
    SystemSpec one = testutil::make_system(F(3), 4, {{0, 1}, {2, 3}}, {{1, 2}});
    CHECK(count_product_zero(one) == count_single(one, 0, 0));

    // frozen reference values, each independently confirmed by brute force
    SystemSpec v1 = fixture_two_factor(F(2));
    CHECK(count_product_zero(v1) == 112);
    CHECK(brute_count(CountQuery{v1, 0}) == 112);

    SystemSpec v2 = fixture_three_factor(F(2));
    CHECK(count_product_zero(v2) == 232);
    CHECK(brute_count(CountQuery{v2, 0}) == 232);

    SystemSpec deficient = testutil::make_system(F(2), 2, {{0}, {1}},
                                                 {{1, 1}, {1, 1}}, /*relaxed=*/true);
    CHECK_THROWS_AS(count_product_zero(deficient), RankError);
}

TEST_CASE("nonzero-target product count") {
    // f = X1 * X2 over F_3: X1 free nonzero, X2 forced
    SystemSpec split = testutil::make_system(F(3), 2, {{0}, {1}}, {{1, 0}, {0, 1}});
    CHECK(count_product_nonzero(split, 1) == 2);

    // frozen square/non-square values at q = 3 (1 is the square, 2 is not)
    SystemSpec v1 = fixture_two_factor(F(3));
    CHECK(F(3)->is_nonzero_square(1));
    CHECK_FALSE(F(3)->is_nonzero_square(2));
    CHECK(count_product_nonzero(v1, 1) == 384);
    CHECK(count_product_nonzero(v1, 2) == 312);
    CHECK(brute_count(CountQuery{v1, 1}) == 384);
    CHECK(brute_count(CountQuery{v1, 2}) == 312);

    CHECK_THROWS_AS(count_product_nonzero(v1, 0), ZeroTarget);
}

TEST_CASE("m = k closed form") {
    // a single monomial of size 3 over F_3 and any nonzero target
    SystemSpec mono = testutil::make_system(F(3), 3, {{0, 1, 2}}, {{2}});
    CHECK(count_special_mk(mono, 1) == 4); // (q-1)^{d-1}
    CHECK(count_special_mk(mono, 2) == 4);

    SystemSpec pair = testutil::make_system(F(2), 4, {{0, 1}, {2, 3}}, {{1, 0}, {0, 1}});
    CHECK(count_special_mk(pair, 1) == count_product_nonzero(pair, 1));
    CHECK(count_special_mk(pair, 1) == brute_count(CountQuery{pair, 1}));

    InstanceGen gen(555);
    InstanceGen::Options opts;
    opts.square = true;
    for (int i = 0; i < 15; ++i) {
        SystemSpec sys = gen.next(opts);
        for (std::uint32_t a = 1; a < sys.field().q(); ++a)
            CHECK(count_special_mk(sys, a) == count_product_nonzero(sys, a));
    }

    SystemSpec v1 = fixture_two_factor(F(2));
    CHECK_THROWS_AS(count_special_mk(v1, 1), ShapeMismatch); // m != k
    CHECK_THROWS_AS(count_special_mk(pair, 0), ShapeMismatch);
}

TEST_CASE("diagonal-pair closed form") {
    // k = 1, singleton blocks: c1 X1 + c2 X2 = a has exactly q solutions
    SystemSpec line = testutil::make_system(F(3), 2, {{0}, {1}}, {{2, 1}});
    CHECK(has_diagonal_pair_shape(line));
    CHECK(count_special_diag(line, 1) == 3);
    CHECK(count_special_diag(line, 2) == 3);

    // frozen from brute force over F_2^4: X1 X2 + X3 X4 = 1 has 6 solutions
    SystemSpec quad = testutil::make_system(F(2), 4, {{0, 1}, {2, 3}}, {{1, 1}});
    CHECK(brute_count(CountQuery{quad, 1}) == 6);
    CHECK(count_special_diag(quad, 1) == 6);
    CHECK(count_special_diag(quad, 0) == brute_count(CountQuery{quad, 0}));

    InstanceGen gen(777);
    InstanceGen::Options opts;
    opts.diagonal_pair = true;
    for (int i = 0; i < 15; ++i) {
        SystemSpec sys = gen.next(opts);
        REQUIRE(has_diagonal_pair_shape(sys));
        CHECK(count_special_diag(sys, 0) == count_product_zero(sys));
        for (std::uint32_t a = 1; a < sys.field().q(); ++a)
            CHECK(count_special_diag(sys, a) == count_product_nonzero(sys, a));
    }

    SystemSpec v1 = fixture_two_factor(F(2));
    CHECK_FALSE(has_diagonal_pair_shape(v1));
    CHECK_THROWS_AS(count_special_diag(v1, 0), ShapeMismatch);
    // vanished diagonal entry breaks the shape
    SystemSpec off = testutil::make_system(F(2), 2, {{0}, {1}}, {{1, 0}}, /*relaxed=*/true);
    CHECK_FALSE(has_diagonal_pair_shape(off));
}

TEST_CASE("two-factor route equals the general path") {
    for (auto f : {F(2), F(3)}) {
        SystemSpec v1 = fixture_two_factor(f);
        CHECK(count_pair_product(v1, 0) == count_product_zero(v1));
        for (std::uint32_t a = 1; a < f->q(); ++a)
            CHECK(count_pair_product(v1, a) == count_product_nonzero(v1, a));
    }
    SystemSpec v2 = fixture_three_factor(F(2));
    CHECK_THROWS_AS(count_pair_product(v2, 0), ShapeMismatch); // k = 3
}

TEST_CASE("submatrix invariance of the joint count") {
    // force the non-canonical choice {0, 2} on the two-factor system
    SystemSpec v1 = fixture_two_factor(F(3));
    const auto rows = testutil::iota_rows(2);
    const std::vector<int> canonical = {0, 1};
    const std::vector<int> alternative = {0, 2};
    const std::vector<int> alternative2 = {1, 2};
    for (std::uint32_t b1 = 0; b1 < 3; ++b1)
        for (std::uint32_t b2 = 0; b2 < 3; ++b2) {
            const std::vector<std::uint32_t> b = {b1, b2};
            const BigInt ref = count_system_with_cols(v1, rows, canonical, b);
            CHECK(count_system_with_cols(v1, rows, alternative, b) == ref);
            CHECK(count_system_with_cols(v1, rows, alternative2, b) == ref);
            CHECK(count_system(v1, rows, b) == ref);
        }
}

TEST_CASE("conservation over all targets") {
    for (auto f : {F(2), F(3), F(2, 2)}) {
        SystemSpec v1 = fixture_two_factor(f);
        BigInt sum = count_product_zero(v1);
        for (std::uint32_t a = 1; a < f->q(); ++a) sum += count_product_nonzero(v1, a);
        CHECK(sum == big_pow(f->q(), 7));
    }
}

TEST_CASE("dispatcher") {
    SystemSpec v1 = fixture_two_factor(F(2));
    CountResult r = count(CountQuery{v1, 0});
    CHECK(r.count == 112);
    CHECK(r.method == "general-IE");
    CHECK(count(CountQuery{v1, 1}).method == "general-factorization");
    CHECK(count(CountQuery{v1, 0}, Method::Oracle).count == 112);
    CHECK_THROWS_AS(count(CountQuery{v1, 0}, Method::Special), ShapeMismatch);

    SystemSpec pair = testutil::make_system(F(3), 2, {{0}, {1}}, {{1, 0}, {0, 1}});
    CHECK(count(CountQuery{pair, 1}).method == "special-mk");
    CHECK(count(CountQuery{pair, 0}).method == "general-IE");

    SystemSpec quad = testutil::make_system(F(2), 4, {{0, 1}, {2, 3}}, {{1, 1}});
    CHECK(count(CountQuery{quad, 1}).method == "special-diag");
    CHECK(count(CountQuery{quad, 0}).method == "special-diag");

    // every method agrees where it applies
    for (Method m : {Method::Auto, Method::General, Method::Special, Method::Oracle})
        CHECK(count(CountQuery{quad, 1}, m).count == 6);

    // the guard rejects an oracle request on an astronomic point space
    SystemSpec big = fixture_two_factor_scaled(F(3), 10); // 3^30 points
    CHECK_THROWS_AS(count(CountQuery{big, 0}, Method::Oracle), OracleTooLarge);
    CHECK(count(CountQuery{big, 0}).count > 0); // formula path unfazed
}

TEST_CASE("counts stay within [0, q^n]") {
    InstanceGen gen(31337);
    InstanceGen::Options opts;
    for (int i = 0; i < 30; ++i) {
        SystemSpec sys = gen.next(opts);
        const BigInt bound = big_pow(sys.field().q(), sys.n());
        for (std::uint32_t a = 0; a < sys.field().q(); ++a) {
            const BigInt c =
                a == 0 ? count_product_zero(sys) : count_product_nonzero(sys, a);
            CHECK(c >= 0);
            CHECK(c <= bound);
        }
    }
}
