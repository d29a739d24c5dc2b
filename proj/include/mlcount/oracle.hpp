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

#ifndef MLCOUNT_ORACLE_HPP_
#define MLCOUNT_ORACLE_HPP_

#include "mlcount/bigint.hpp"
#include "mlcount/model.hpp"

namespace mlcount {

// Ground truth by exhaustive enumeration of F_q^n.  Deliberately free of any
// rank assumption and of any cleverness beyond splitting the point range
// across threads.
struct OracleOptions {
    std::uint64_t max_points = std::uint64_t{1} << 26;
    bool force = false; // lift the guard (benchmarks)
    int threads = 1;
};

/// Number of x with f_1(x)...f_k(x) = a.  Throws OracleTooLarge when
/// q^n exceeds the guard and force is unset.
BigInt brute_count(const CountQuery& query, const OracleOptions& opts = {});

/// Number of common solutions of f_{rows[t]}(x) = b[t] for all t.  An empty
/// row_set imposes no constraint and yields q^n.
BigInt brute_count_system(const SystemSpec& sys, std::span<const int> row_set,
                          std::span<const std::uint32_t> b, const OracleOptions& opts = {});

/// For each a in F_q (by element index) the number of x with f(x) = a;
/// the entries sum to q^n.
std::vector<BigInt> value_distribution(const SystemSpec& sys, const OracleOptions& opts = {});

} // namespace mlcount

#endif // MLCOUNT_ORACLE_HPP_
