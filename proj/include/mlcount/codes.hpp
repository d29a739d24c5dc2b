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

#ifndef MLCOUNT_CODES_HPP_
#define MLCOUNT_CODES_HPP_

#include <functional>
#include <string>
#include <string_view>

#include "mlcount/counting.hpp"

namespace mlcount {

/// The multilinear code with separated variables: evaluations of all
/// polynomials sum_j a_j prod_{tau in J_j} X_tau at every point of F_q^n.
/// Length q^n, dimension m.
class CodeSpec {
  public:
    static CodeSpec make(FieldPtr field, Partition partition);

    const Field& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    const Partition& partition() const noexcept { return partition_; }

    BigInt length() const { return big_pow(field_->q(), partition_.n()); }
    int dimension() const noexcept { return partition_.m(); }
    int max_block_size() const { return partition_.max_block_size(); }

  private:
    CodeSpec(FieldPtr field, Partition partition)
        : field_(std::move(field)), partition_(std::move(partition)) {}
    FieldPtr field_;
    Partition partition_;
};

CodeSpec parse_code(std::string_view text);
std::string serialize_code(const CodeSpec& code);

/// An h-dimensional subcode given by h independent coefficient vectors
/// (rows of an h x m matrix over F_q).
struct SubcodeBasis {
    Matrix coeffs;
    int dimension() const noexcept { return coeffs.rows(); }
};

/// Hamming weight of the codeword with the given coefficient vector:
/// the number of points where the polynomial is nonzero, q^n - N(f, 0).
BigInt codeword_weight(const CodeSpec& code, std::span<const std::uint32_t> word_coeffs);

/// q^{n-s} (q-1)^s with s the largest block size.
BigInt min_distance(const CodeSpec& code);

/// Support size of the subcode: q^n minus the number of common zeros of the
/// basis polynomials, computed on the formula path (no enumeration of F_q^n).
BigInt wei_weight(const CodeSpec& code, const SubcodeBasis& basis);

/// (d_1, ..., d_m): for each h the minimum wei_weight over all h-dimensional
/// subcodes, enumerated through canonical RREF bases.  Throws
/// HierarchyTooLarge when a level has more than level_guard subspaces.
std::vector<BigInt> weight_hierarchy(const CodeSpec& code,
                                     const BigInt& level_guard = BigInt(1000000));

/// Streams every h-dimensional subspace of F_q^m exactly once as its unique
/// RREF basis matrix; the total is the Gaussian binomial [m choose h]_q.
void for_each_subspace(const Field& field, int m, int h,
                       const std::function<void(const Matrix&)>& fn);

/// [m choose h]_q via the q-Pascal recurrence (exact, division-free).
BigInt gaussian_binomial(int m, int h, const BigInt& q);

} // namespace mlcount

#endif // MLCOUNT_CODES_HPP_
