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

#ifndef MLCOUNT_COUNTING_HPP_
#define MLCOUNT_COUNTING_HPP_

#include <chrono>
#include <string>

#include "mlcount/bigint.hpp"
#include "mlcount/model.hpp"
#include "mlcount/oracle.hpp"

namespace mlcount {

// Formula-path counting.  Every expression is evaluated in exact integers:
// the rational building block q^{d-1} (1 - ((q-1)/q)^{d-1}) is always
// computed as q^{d-1} - (q-1)^{d-1}, so no rational intermediates exist.

/// Solutions of alpha * X_1...X_d = w over F_q^d, d >= 1, alpha nonzero.
/// Depends on w only through w == 0:
///   w != 0 -> (q-1)^{d-1},  w == 0 -> q^d - (q-1)^d.
BigInt block_product_count(const Field& field, int d, bool target_is_zero);

/// Both counts of a block at once; count_zero + (q-1) * count_each_nonzero = q^d.
struct BlockDistribution {
    int block_size;
    BigInt count_zero;
    BigInt count_each_nonzero;
};
BlockDistribution block_distribution(const Field& field, int d);

/// Single-factor count (k = 1 closed form) for row i of the system:
/// q^{n-1} + kappa(a) q^{n-1} prod_{l: a_il != 0} (1 - ((q-1)/q)^{|J_l|-1}).
/// A zero row is the constant-zero polynomial: q^n for a = 0, else 0.
BigInt count_single(const SystemSpec& sys, int row, std::uint32_t target);

/// Common solutions of f_{rows[t]} = b[t], t = 1..l, for independent rows.
/// Evaluated as a sum over the (m - l) free-block product values, each value
/// tuple weighted by the number of free assignments realizing it; cost
/// q^{m-l} instead of q^{|I_free|}.
BigInt count_system(const SystemSpec& sys, std::span<const int> row_set,
                    std::span<const std::uint32_t> b);

/// Same count with a forced invertible-column choice; the result is provably
/// independent of the choice and the test suite exercises that.
BigInt count_system_with_cols(const SystemSpec& sys, std::span<const int> row_set,
                              std::span<const int> col_set,
                              std::span<const std::uint32_t> b);

/// N(f, 0) by inclusion-exclusion over nonempty row subsets
/// (single rows via count_single, larger subsets via count_system).
BigInt count_product_zero(const SystemSpec& sys);

/// N(f, a) for a != 0: sum over the (q-1)^{k-1} factorizations
/// a_1 ... a_k = a of the joint count; the last coordinate is forced.
BigInt count_product_nonzero(const SystemSpec& sys, std::uint32_t target);

/// Closed form for m = k (A invertible), a != 0.
BigInt count_special_mk(const SystemSpec& sys, std::uint32_t target);

/// Closed forms for the diagonal-pair shape m = 2k, A = (D1 D2) with
/// invertible diagonal blocks; covers both a != 0 and a = 0.
BigInt count_special_diag(const SystemSpec& sys, std::uint32_t target);
bool has_diagonal_pair_shape(const SystemSpec& sys);

/// Two-factor (k = 2) semi-explicit forms, kept as an independent route for
/// cross-checking against the general path.
BigInt count_pair_product(const SystemSpec& sys, std::uint32_t target);

enum class Method { Auto, General, Special, Oracle };

struct CountResult {
    BigInt count;
    std::string method; // "general-IE", "general-factorization", "special-mk",
                        // "special-diag", "oracle"
    std::chrono::nanoseconds elapsed{0};
};

/// Dispatcher.  Auto prefers a matching special shape, otherwise the general
/// path; the oracle runs only on explicit request.
CountResult count(const CountQuery& query, Method method = Method::Auto,
                  const OracleOptions& oracle_opts = {});

} // namespace mlcount

#endif // MLCOUNT_COUNTING_HPP_
