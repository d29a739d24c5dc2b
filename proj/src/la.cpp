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

#include "mlcount/la.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace mlcount {

Matrix Matrix::from_rows(const Field& field,
                         const std::vector<std::vector<std::uint32_t>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Matrix m(field, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw ShapeMismatch("ragged rows in matrix literal");
        for (int j = 0; j < c; ++j) {
            if (rows[i][j] >= field.q())
                throw SchemaError("matrix entry " + std::to_string(rows[i][j]) +
                                  " is not an element index of F_" + std::to_string(field.q()));
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

Matrix Matrix::identity(const Field& field, int n) {
    Matrix m(field, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::select(std::span<const int> row_set, std::span<const int> col_set) const {
    Matrix out(*f_, static_cast<int>(row_set.size()), static_cast<int>(col_set.size()));
    for (std::size_t i = 0; i < row_set.size(); ++i)
        for (std::size_t j = 0; j < col_set.size(); ++j)
            out.at(static_cast<int>(i), static_cast<int>(j)) = at(row_set[i], col_set[j]);
    return out;
}

std::vector<std::vector<std::uint32_t>> Matrix::row_vectors() const {
    std::vector<std::vector<std::uint32_t>> out(rows_);
    for (int i = 0; i < rows_; ++i) {
        out[i].resize(cols_);
        for (int j = 0; j < cols_; ++j) out[i][j] = at(i, j);
    }
    return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw ShapeMismatch("matmul dimension mismatch");
    const Field& f = a.field();
    Matrix out(f, a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            std::uint32_t acc = 0;
            for (int t = 0; t < a.cols(); ++t)
                acc = f.add(acc, f.mul(a.at(i, t), b.at(t, j)));
            out.at(i, j) = acc;
        }
    return out;
}

RrefResult rref_rank(const Matrix& m) {
    const Field& f = m.field();
    Matrix r = m;
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < r.cols() && row < r.rows(); ++col) {
        int pivot = -1;
        for (int i = row; i < r.rows(); ++i)
            if (r.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != row)
            for (int j = 0; j < r.cols(); ++j) std::swap(r.at(pivot, j), r.at(row, j));
        const std::uint32_t scale = f.inv(r.at(row, col));
        for (int j = 0; j < r.cols(); ++j) r.at(row, j) = f.mul(r.at(row, j), scale);
        for (int i = 0; i < r.rows(); ++i) {
            if (i == row || r.at(i, col) == 0) continue;
            const std::uint32_t factor = r.at(i, col);
            for (int j = 0; j < r.cols(); ++j)
                r.at(i, j) = f.sub(r.at(i, j), f.mul(factor, r.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {static_cast<int>(pivots.size()), std::move(r), std::move(pivots)};
}

Matrix invert(const Matrix& m) {
    if (m.rows() != m.cols()) throw ShapeMismatch("only square matrices can be inverted");
    const Field& f = m.field();
    const int n = m.rows();
    // Gauss-Jordan on [M | I]
    Matrix aug(f, n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i)
            if (aug.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) throw SingularMatrix("matrix is singular");
        if (pivot != col)
            for (int j = 0; j < 2 * n; ++j) std::swap(aug.at(pivot, j), aug.at(col, j));
        const std::uint32_t scale = f.inv(aug.at(col, col));
        for (int j = 0; j < 2 * n; ++j) aug.at(col, j) = f.mul(aug.at(col, j), scale);
        for (int i = 0; i < n; ++i) {
            if (i == col || aug.at(i, col) == 0) continue;
            const std::uint32_t factor = aug.at(i, col);
            for (int j = 0; j < 2 * n; ++j)
                aug.at(i, j) = f.sub(aug.at(i, j), f.mul(factor, aug.at(col, j)));
        }
    }
    Matrix out(f, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    return out;
}

static SubmatrixChoice build_choice(const Matrix& a, std::span<const int> row_set,
                                    std::vector<int> col_set) {
    std::vector<int> complement;
    complement.reserve(a.cols() - col_set.size());
    for (int j = 0; j < a.cols(); ++j)
        if (std::find(col_set.begin(), col_set.end(), j) == col_set.end())
            complement.push_back(j);

    const Matrix b = a.select(row_set, col_set);
    Matrix b_inv = invert(b); // throws SingularMatrix if the choice is invalid
    const Matrix c = a.select(row_set, complement);
    Matrix sigma = matmul(b_inv, c);
    return {std::vector<int>(row_set.begin(), row_set.end()), std::move(col_set),
            std::move(complement), std::move(b_inv), std::move(sigma)};
}

SubmatrixChoice choose_submatrix(const Matrix& a, std::span<const int> row_set) {
    std::vector<int> all_cols(a.cols());
    std::iota(all_cols.begin(), all_cols.end(), 0);
    const Matrix sub = a.select(row_set, all_cols);
    RrefResult r = rref_rank(sub);
    if (r.rank != static_cast<int>(row_set.size()))
        throw RankError("selected rows have rank " + std::to_string(r.rank) + " < " +
                        std::to_string(row_set.size()));
    // pivot columns of the RREF are the lexicographically smallest
    // independent column subset, which makes the choice canonical
    return build_choice(a, row_set, std::move(r.pivot_cols));
}

SubmatrixChoice choose_submatrix(const Matrix& a, std::span<const int> row_set,
                                 std::span<const int> col_set) {
    if (col_set.size() != row_set.size())
        throw ShapeMismatch("column choice must select a square block");
    try {
        return build_choice(a, row_set, std::vector<int>(col_set.begin(), col_set.end()));
    } catch (const SingularMatrix&) {
        throw RankError("forced column choice does not give an invertible block");
    }
}

} // namespace mlcount
