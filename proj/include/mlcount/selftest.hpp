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

#ifndef MLCOUNT_SELFTEST_HPP_
#define MLCOUNT_SELFTEST_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mlcount/codes.hpp"

namespace mlcount {

// Reference problems used by the self test, the benchmarks and the
// regression fixtures: two product systems with known closed-form counts.

/// (X1 X2 + X5 X6 X7)(X3 X4 + X5 X6 X7): k=2, m=3, n=7,
/// A = [[1,0,1],[0,1,1]], blocks {1,2} {3,4} {5,6,7}.
SystemSpec fixture_two_factor(FieldPtr field);
/// Same system with every block scaled to size `block_size` (n = 3*size).
SystemSpec fixture_two_factor_scaled(FieldPtr field, int block_size);
/// (X1 + X6X7X8)(X1 + X2X3 + X6X7X8)(X2X3 + X4X5): k=3, m=4, n=8,
/// A = [[1,0,0,1],[1,1,0,1],[0,1,1,0]], blocks {1} {2,3} {4,5} {6,7,8}.
SystemSpec fixture_three_factor(FieldPtr field);

// Closed-form reference counts for the fixtures, as polynomials in q.
BigInt two_factor_zero_count(std::uint64_t q);          // 2q^6+3q^5-13q^4+16q^3-9q^2+2q
BigInt two_factor_square_count(std::uint64_t q);        // (q-1)^2 q (q^3+q^2-2q+2)
BigInt two_factor_nonsquare_count(std::uint64_t q);     // (q-1)^3 q (q^2+2q-2)
BigInt three_factor_zero_count(std::uint64_t q);        // 3q^7-3q^6+q^3(2q^2-2q+1)
/// The three-factor nonzero count as the explicit double sum over
/// (a1, a2) in (F_q*)^2 of q^3 (q + kappa(a2-a1)) (q + kappa(a1-a2+a/(a1 a2))).
BigInt three_factor_nonzero_count(const Field& field, std::uint32_t a);

/// Deterministic generator of valid random systems for the property suites.
class InstanceGen {
  public:
    struct Options {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> fields =
            {{2, 1}, {3, 1}, {2, 2}, {5, 1}}; // q in {2, 3, 4, 5}
        int max_n = 10;
        int max_m = 4;
        int max_k = 3;
        bool square = false;        // force m = k with invertible A
        bool diagonal_pair = false; // force m = 2k with A = (D1 D2) diagonal
        int fixed_k = 0;            // > 0 forces k
        std::uint64_t max_points = 0; // > 0 caps q^n
    };

    explicit InstanceGen(std::uint64_t seed) : rng_(seed) {}

    SystemSpec next(const Options& opts);
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi); // inclusive

  private:
    FieldPtr field_for(std::uint32_t p, std::uint32_t e);
    std::mt19937_64 rng_;
    std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, FieldPtr>> cache_;
};

struct SelftestOptions {
    int max_bits = 20; // oracle-backed suites restricted to q^n <= 2^max_bits
    std::uint64_t seed = 20260808;
    int threads = 1;
    int random_instances = 60;
};

struct SuiteResult {
    std::string name;
    int passed = 0;
    int failed = 0;
    std::vector<std::string> failures; // problem JSON + expectation, for reproduction
    bool ok() const noexcept { return failed == 0; }
};

/// Runs the fixture suites and the randomized property suites; deterministic
/// for a fixed seed.
std::vector<SuiteResult> run_selftest(const SelftestOptions& opts = {});

} // namespace mlcount

#endif // MLCOUNT_SELFTEST_HPP_
