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

#include <random>

#include "test_util.hpp"

using namespace mlcount;
using testutil::F;

namespace {
// §V-2 style 3x4 coefficient matrix used across several checks
Matrix three_factor_matrix(const Field& f) {
    return Matrix::from_rows(f, {{1, 0, 0, 1}, {1, 1, 0, 1}, {0, 1, 1, 0}});
}
} // namespace

TEST_CASE("rref and rank") {
    auto f5 = F(5);
    RrefResult id = rref_rank(Matrix::identity(*f5, 3));
    CHECK(id.rank == 3);
    CHECK(id.pivot_cols == std::vector<int>{0, 1, 2});
    CHECK(id.rref == Matrix::identity(*f5, 3));

    for (auto f : {F(2), F(3)}) {
        RrefResult r = rref_rank(three_factor_matrix(*f));
        CHECK(r.rank == 3);
    }

    Matrix zero(*f5, 2, 3);
    RrefResult rz = rref_rank(zero);
    CHECK(rz.rank == 0);
    CHECK(rz.pivot_cols.empty());

    // the reduced form is a fixed point
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = trial % 2 ? F(3) : F(2, 2);
        Matrix m(*f, 3, 4);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 4; ++j) m.at(i, j) = rng() % f->q();
        RrefResult once = rref_rank(m);
        RrefResult twice = rref_rank(once.rref);
        CHECK(once.rref == twice.rref);
        CHECK(once.rank == twice.rank);
    }
}

TEST_CASE("inversion") {
    auto f2 = F(2);
    Matrix b12 = Matrix::from_rows(*f2, {{1, 0}, {1, 1}});
    CHECK(invert(b12) == b12); // self-inverse over F_2
    CHECK(matmul(b12, invert(b12)) == Matrix::identity(*f2, 2));

    // leading 3x3 block of the three-factor matrix
    Matrix b123_f2 = Matrix::from_rows(*f2, {{1, 0, 0}, {1, 1, 0}, {0, 1, 1}});
    CHECK(invert(b123_f2) == Matrix::from_rows(*f2, {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}}));

    auto f3 = F(3);
    Matrix b123_f3 = Matrix::from_rows(*f3, {{1, 0, 0}, {1, 1, 0}, {0, 1, 1}});
    CHECK(invert(b123_f3) == Matrix::from_rows(*f3, {{1, 0, 0}, {2, 1, 0}, {1, 2, 1}}));

    auto f7 = F(7);
    Matrix diag = Matrix::from_rows(*f7, {{3, 0}, {0, 5}});
    Matrix diag_inv = invert(diag);
    CHECK(diag_inv.at(0, 0) == f7->inv(3));
    CHECK(diag_inv.at(1, 1) == f7->inv(5));
    CHECK(diag_inv.at(0, 1) == 0);

    CHECK_THROWS_AS(invert(Matrix(*f7, 2, 2)), SingularMatrix);
    CHECK_THROWS_AS(invert(Matrix(*f7, 2, 3)), ShapeMismatch);
}

TEST_CASE("submatrix choice on the reference systems") {
    auto f2 = F(2);
    Matrix v1 = Matrix::from_rows(*f2, {{1, 0, 1}, {0, 1, 1}});
    const std::vector<int> rows01 = {0, 1};
    SubmatrixChoice c = choose_submatrix(v1, rows01);
    CHECK(c.col_set == std::vector<int>{0, 1});
    CHECK(c.complement_cols == std::vector<int>{2});
    CHECK(c.b_inv == Matrix::identity(*f2, 2));
    REQUIRE(c.sigma.rows() == 2);
    REQUIRE(c.sigma.cols() == 1);
    CHECK(c.sigma.at(0, 0) == 1);
    CHECK(c.sigma.at(1, 0) == 1);

    for (auto f : {F(2), F(3)}) {
        Matrix a = three_factor_matrix(*f);
        const std::vector<int> rows012 = {0, 1, 2};
        SubmatrixChoice c3 = choose_submatrix(a, rows012);
        CHECK(c3.col_set == std::vector<int>{0, 1, 2});
        REQUIRE(c3.sigma.cols() == 1);
        CHECK(c3.sigma.at(0, 0) == 1);
        CHECK(c3.sigma.at(1, 0) == 0);
        CHECK(c3.sigma.at(2, 0) == 0);
    }

    // l = m: no complement columns, sigma is l x 0
    auto f3 = F(3);
    Matrix sq = Matrix::from_rows(*f3, {{1, 2}, {2, 2}});
    SubmatrixChoice cs = choose_submatrix(sq, rows01);
    CHECK(cs.complement_cols.empty());
    CHECK(cs.sigma.cols() == 0);

    Matrix deficient = Matrix::from_rows(*f2, {{1, 0, 1}, {1, 0, 1}});
    CHECK_THROWS_AS(choose_submatrix(deficient, rows01), RankError);
}

TEST_CASE("submatrix choice properties on random matrices") {
    std::mt19937 rng(11);
    int done = 0;
    while (done < 60) {
        auto f = std::vector<FieldPtr>{F(2), F(3), F(2, 2), F(5)}[rng() % 4];
        const int k = 1 + static_cast<int>(rng() % 3);
        const int m = k + static_cast<int>(rng() % (5 - k));
        Matrix a(*f, k, m);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < m; ++j) a.at(i, j) = rng() % f->q();
        if (rref_rank(a).rank < k) continue;
        ++done;

        auto rows = testutil::iota_rows(k);
        SubmatrixChoice c = choose_submatrix(a, rows);
        // deterministic
        CHECK(choose_submatrix(a, rows).col_set == c.col_set);
        // B * B_inv = I and B * sigma = C, entrywise
        Matrix b = a.select(rows, c.col_set);
        CHECK(matmul(b, c.b_inv) == Matrix::identity(*f, k));
        CHECK(matmul(b, c.sigma) == a.select(rows, c.complement_cols));
    }
}

TEST_CASE("forced column choice") {
    auto f2 = F(2);
    Matrix v1 = Matrix::from_rows(*f2, {{1, 0, 1}, {0, 1, 1}});
    const std::vector<int> rows = {0, 1};
    const std::vector<int> cols02 = {0, 2};
    SubmatrixChoice c = choose_submatrix(v1, rows, cols02);
    CHECK(c.col_set == cols02);
    CHECK(c.complement_cols == std::vector<int>{1});
    Matrix b = v1.select(rows, cols02);
    CHECK(matmul(b, c.b_inv) == Matrix::identity(*f2, 2));

    // {1, 2} -> B = [[0,1],[1,1]] is invertible; {0, 1} of the deficient
    // matrix below is not
    Matrix bad = Matrix::from_rows(*f2, {{1, 1, 0}, {1, 1, 1}});
    const std::vector<int> cols01 = {0, 1};
    CHECK_THROWS_AS(choose_submatrix(bad, rows, cols01), RankError);
}
