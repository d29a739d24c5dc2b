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

#ifndef MLCOUNT_MODEL_HPP_
#define MLCOUNT_MODEL_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlcount/la.hpp"

namespace mlcount {

/// A partition {J_1, ..., J_m} of the variable indices {0, ..., n-1}.
/// Block order is significant: block j is the support of monomial j and
/// pairs with column j of the coefficient matrix.
class Partition {
  public:
    /// Validates: nonempty disjoint blocks covering exactly {0,...,n-1},
    /// m <= n.  Blocks are stored with ascending members.
    static Partition checked(int n, std::vector<std::vector<int>> blocks);

    int n() const noexcept { return n_; }
    int m() const noexcept { return static_cast<int>(blocks_.size()); }
    const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }
    int block_size(int j) const { return static_cast<int>(blocks_[j].size()); }
    int max_block_size() const;

    bool operator==(const Partition& o) const { return n_ == o.n_ && blocks_ == o.blocks_; }

  private:
    Partition(int n, std::vector<std::vector<int>> blocks)
        : n_(n), blocks_(std::move(blocks)) {}
    int n_ = 0;
    std::vector<std::vector<int>> blocks_;
};

/// Union of the blocks at the given (complement) columns, ascending.
std::vector<int> free_support(const Partition& partition, std::span<const int> cols);

/// A problem instance: the field, the partition J, and the k x m coefficient
/// matrix A whose row i lists the monomial coefficients of factor i.
class SystemSpec {
  public:
    /// Full validation: k <= m and rank(A) = k.
    static SystemSpec checked(FieldPtr field, Partition partition, Matrix coeffs);
    /// Shape-only validation; rank deficiency and zero rows are tolerated
    /// (brute-force enumeration needs no rank assumption).
    static SystemSpec relaxed(FieldPtr field, Partition partition, Matrix coeffs);

    const Field& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    const Partition& partition() const noexcept { return partition_; }
    const Matrix& coeffs() const noexcept { return coeffs_; }

    int k() const noexcept { return coeffs_.rows(); }
    int m() const noexcept { return partition_.m(); }
    int n() const noexcept { return partition_.n(); }
    int rank() const noexcept { return rank_; }

    /// Throws RankError unless rank(A) = k; every formula path calls this.
    void require_full_rank() const;

    bool row_is_zero(int i) const;

    bool operator==(const SystemSpec& o) const {
        return *field_ == *o.field_ && partition_ == o.partition_ && coeffs_ == o.coeffs_;
    }

  private:
    SystemSpec(FieldPtr field, Partition partition, Matrix coeffs, int rank)
        : field_(std::move(field)), partition_(std::move(partition)),
          coeffs_(std::move(coeffs)), rank_(rank) {}

    FieldPtr field_;
    Partition partition_;
    Matrix coeffs_;
    int rank_ = 0;
};

/// The question "how many x in F_q^n satisfy f_1(x)...f_k(x) = a".
struct CountQuery {
    SystemSpec system;
    std::uint32_t target; // canonical element index of a

    FieldElement target_element() const { return system.field().element(target); }
    bool operator==(const CountQuery& o) const {
        return system == o.system && target == o.target;
    }
};

/// Parses the JSON problem file format.  File indices are 1-based; the
/// in-memory model is 0-based.  Unknown keys are rejected.  When
/// require_rank is set (the default, needed by every formula path) a
/// rank-deficient A raises RankError; brute-force callers pass false.
CountQuery parse_problem(std::string_view text, bool require_rank = true);
std::string serialize_problem(const CountQuery& query);

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity;
    std::string code;
    std::string message;
};

/// Reports every violated invariant; an empty report means valid.
std::vector<Diagnostic> validate_system(const SystemSpec& sys, bool require_rank = true);

} // namespace mlcount

#endif // MLCOUNT_MODEL_HPP_
