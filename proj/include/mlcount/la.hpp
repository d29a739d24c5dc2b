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

#ifndef MLCOUNT_LA_HPP_
#define MLCOUNT_LA_HPP_

#include <span>
#include <vector>

#include "mlcount/gf.hpp"

namespace mlcount {

/// Dense row-major matrix over a single Field; entries are canonical element
/// indices.  Dimensions stay tiny (k, m <= 16), so plain Gauss-Jordan is used
/// throughout and everything is exact.
class Matrix {
  public:
    Matrix(const Field& field, int rows, int cols)
        : f_(&field), rows_(rows), cols_(cols),
          e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {}

    static Matrix from_rows(const Field& field,
                            const std::vector<std::vector<std::uint32_t>>& rows);
    static Matrix identity(const Field& field, int n);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    const Field& field() const noexcept { return *f_; }

    std::uint32_t at(int r, int c) const { return e_[static_cast<std::size_t>(r) * cols_ + c]; }
    std::uint32_t& at(int r, int c) { return e_[static_cast<std::size_t>(r) * cols_ + c]; }

    Matrix select(std::span<const int> row_set, std::span<const int> col_set) const;
    std::vector<std::vector<std::uint32_t>> row_vectors() const;

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_ && *f_ == *o.f_;
    }

  private:
    const Field* f_;
    int rows_;
    int cols_;
    std::vector<std::uint32_t> e_;
};

Matrix matmul(const Matrix& a, const Matrix& b);

struct RrefResult {
    int rank;
    Matrix rref;                 // the unique reduced row echelon form
    std::vector<int> pivot_cols; // ascending, 0-based
};

RrefResult rref_rank(const Matrix& m);

/// Inverse of a square matrix; throws SingularMatrix / ShapeMismatch.
Matrix invert(const Matrix& m);

/// An invertible block B inside the row-selected submatrix, its inverse, and
/// sigma = B^{-1} C where C holds the complement columns.  Everything is
/// 0-based; row_set indexes rows of the full matrix, col_set/complement_cols
/// partition its column range.
struct SubmatrixChoice {
    std::vector<int> row_set;
    std::vector<int> col_set;
    std::vector<int> complement_cols;
    Matrix b_inv; // l x l
    Matrix sigma; // l x (m - l)
};

/// Canonical choice: col_set = pivot columns of the RREF of the row-selected
/// submatrix, i.e. the lexicographically smallest independent column subset.
/// Throws RankError when the selected rows have rank < |row_set|.
SubmatrixChoice choose_submatrix(const Matrix& a, std::span<const int> row_set);

/// Same with a forced column subset (must make B invertible); used to verify
/// that downstream counts do not depend on the choice.
SubmatrixChoice choose_submatrix(const Matrix& a, std::span<const int> row_set,
                                 std::span<const int> col_set);

} // namespace mlcount

#endif // MLCOUNT_LA_HPP_
