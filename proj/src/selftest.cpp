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

#include "mlcount/selftest.hpp"

#include <algorithm>
#include <numeric>

#include "mlcount/bench.hpp"
#include "mlcount/oracle.hpp"

namespace mlcount {

SystemSpec fixture_two_factor(FieldPtr field) {
    Partition part = Partition::checked(7, {{0, 1}, {2, 3}, {4, 5, 6}});
    Matrix a = Matrix::from_rows(*field, {{1, 0, 1}, {0, 1, 1}});
    return SystemSpec::checked(std::move(field), std::move(part), std::move(a));
}

SystemSpec fixture_two_factor_scaled(FieldPtr field, int block_size) {
    std::vector<std::vector<int>> blocks(3);
    for (int j = 0; j < 3; ++j) {
        blocks[j].resize(static_cast<std::size_t>(block_size));
        std::iota(blocks[j].begin(), blocks[j].end(), j * block_size);
    }
    Partition part = Partition::checked(3 * block_size, std::move(blocks));
    Matrix a = Matrix::from_rows(*field, {{1, 0, 1}, {0, 1, 1}});
    return SystemSpec::checked(std::move(field), std::move(part), std::move(a));
}

SystemSpec fixture_three_factor(FieldPtr field) {
    Partition part = Partition::checked(8, {{0}, {1, 2}, {3, 4}, {5, 6, 7}});
    Matrix a = Matrix::from_rows(*field, {{1, 0, 0, 1}, {1, 1, 0, 1}, {0, 1, 1, 0}});
    return SystemSpec::checked(std::move(field), std::move(part), std::move(a));
}

BigInt two_factor_zero_count(std::uint64_t q) {
    const BigInt Q(static_cast<unsigned long>(q));
    return 2 * big_pow(Q, 6) + 3 * big_pow(Q, 5) - 13 * big_pow(Q, 4) + 16 * big_pow(Q, 3) -
           9 * Q * Q + 2 * Q;
}

BigInt two_factor_square_count(std::uint64_t q) {
    const BigInt Q(static_cast<unsigned long>(q));
    return big_pow(Q - 1, 2) * Q * (big_pow(Q, 3) + Q * Q - 2 * Q + 2);
}

BigInt two_factor_nonsquare_count(std::uint64_t q) {
    const BigInt Q(static_cast<unsigned long>(q));
    return big_pow(Q - 1, 3) * Q * (Q * Q + 2 * Q - 2);
}

BigInt three_factor_zero_count(std::uint64_t q) {
    const BigInt Q(static_cast<unsigned long>(q));
    return 3 * big_pow(Q, 7) - 3 * big_pow(Q, 6) + big_pow(Q, 3) * (2 * Q * Q - 2 * Q + 1);
}

BigInt three_factor_nonzero_count(const Field& f, std::uint32_t a) {
    if (a == 0) throw ZeroTarget("the double-sum form needs a != 0");
    const std::uint64_t q = f.q();
    BigInt sum = 0;
    for (std::uint32_t a1 = 1; a1 < q; ++a1)
        for (std::uint32_t a2 = 1; a2 < q; ++a2) {
            const std::int64_t k1 = f.kappa(f.sub(a2, a1));
            const std::uint32_t arg2 = f.add(f.sub(a1, a2), f.div(a, f.mul(a1, a2)));
            const std::int64_t k2 = f.kappa(arg2);
            sum += BigInt(static_cast<long>(q + k1)) * BigInt(static_cast<long>(q + k2));
        }
    return big_pow(q, 3) * sum;
}

std::uint64_t InstanceGen::uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
}

FieldPtr InstanceGen::field_for(std::uint32_t p, std::uint32_t e) {
    for (const auto& [key, f] : cache_)
        if (key.first == p && key.second == e) return f;
    FieldPtr f = Field::make(p, e);
    cache_.push_back({{p, e}, f});
    return f;
}

SystemSpec InstanceGen::next(const Options& opts) {
    const auto& [p, e] = opts.fields[uniform(0, opts.fields.size() - 1)];
    FieldPtr field = field_for(p, e);
    const std::uint32_t q = field->q();

    int k, m;
    if (opts.square) {
        k = opts.fixed_k > 0 ? opts.fixed_k : static_cast<int>(uniform(1, opts.max_k));
        m = k;
    } else if (opts.diagonal_pair) {
        const int kmax = std::max(1, std::min(opts.max_k, opts.max_m / 2));
        k = opts.fixed_k > 0 ? opts.fixed_k : static_cast<int>(uniform(1, kmax));
        m = 2 * k;
    } else {
        m = static_cast<int>(uniform(1, opts.max_m));
        const int kmax = std::min(m, opts.max_k);
        k = opts.fixed_k > 0 ? opts.fixed_k : static_cast<int>(uniform(1, kmax));
        if (k > m) m = k;
    }

    int n_hi = opts.max_n;
    if (opts.max_points > 0) {
        int fit = 0;
        std::uint64_t pw = 1;
        while (fit < opts.max_n && pw <= opts.max_points / q) {
            pw *= q;
            ++fit;
        }
        n_hi = std::min(n_hi, fit);
    }
    const int n = static_cast<int>(uniform(m, std::max(m, n_hi)));

    // one variable per block first, the rest uniformly
    std::vector<int> vars(static_cast<std::size_t>(n));
    std::iota(vars.begin(), vars.end(), 0);
    std::shuffle(vars.begin(), vars.end(), rng_);
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) blocks[j].push_back(vars[j]);
    for (int i = m; i < n; ++i)
        blocks[uniform(0, static_cast<std::uint64_t>(m) - 1)].push_back(vars[i]);
    Partition part = Partition::checked(n, std::move(blocks));

    // rejection-sample the coefficient matrix until rank k
    while (true) {
        std::vector<std::vector<std::uint32_t>> rows(static_cast<std::size_t>(k));
        if (opts.diagonal_pair) {
            for (int i = 0; i < k; ++i) {
                rows[i].assign(static_cast<std::size_t>(m), 0);
                rows[i][static_cast<std::size_t>(i)] =
                    static_cast<std::uint32_t>(uniform(1, q - 1));
                rows[i][static_cast<std::size_t>(k + i)] =
                    static_cast<std::uint32_t>(uniform(1, q - 1));
            }
        } else {
            for (int i = 0; i < k; ++i) {
                rows[i].resize(static_cast<std::size_t>(m));
                for (int j = 0; j < m; ++j)
                    rows[i][static_cast<std::size_t>(j)] =
                        static_cast<std::uint32_t>(uniform(0, q - 1));
            }
        }
        Matrix a = Matrix::from_rows(*field, rows);
        if (rref_rank(a).rank == k) return SystemSpec::checked(field, part, std::move(a));
    }
}

namespace {

class Suite {
  public:
    explicit Suite(std::string name) { result_.name = std::move(name); }

    void check(bool ok, const std::string& context) {
        if (ok) {
            ++result_.passed;
        } else {
            ++result_.failed;
            result_.failures.push_back(context);
        }
    }

    SuiteResult take() { return std::move(result_); }

  private:
    SuiteResult result_;
};

std::string describe(const SystemSpec& sys, std::uint32_t a, const std::string& what) {
    return what + "\nproblem: " + serialize_problem(CountQuery{sys, a});
}

bool oracle_fits(const SystemSpec& sys, int max_bits) {
    return big_pow(sys.field().q(), sys.n()) <= big_pow(2, static_cast<std::uint64_t>(max_bits));
}

SuiteResult suite_fixture_two_factor(const SelftestOptions& opts) {
    Suite suite("fixtures-two-factor");
    OracleOptions oracle{.threads = opts.threads};
    for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
        FieldPtr field = Field::make(q);
        SystemSpec sys = fixture_two_factor(field);
        const BigInt zero = count_product_zero(sys);
        suite.check(zero == two_factor_zero_count(q),
                    describe(sys, 0, "zero count vs reference polynomial at q = " +
                                         std::to_string(q)));
        std::vector<BigInt> dist;
        const bool with_oracle = oracle_fits(sys, opts.max_bits);
        if (with_oracle) {
            dist = value_distribution(sys, oracle);
            suite.check(zero == dist[0],
                        describe(sys, 0, "zero count vs oracle at q = " + std::to_string(q)));
        }
        for (std::uint32_t a = 1; a < q; ++a) {
            const BigInt got = count_product_nonzero(sys, a);
            if (q % 2 == 1) {
                const BigInt want = field->is_nonzero_square(a)
                                        ? two_factor_square_count(q)
                                        : two_factor_nonsquare_count(q);
                suite.check(got == want,
                            describe(sys, a, "nonzero count vs reference polynomial"));
            }
            // for even q the square/non-square split degenerates (every
            // element is a square), so the oracle is the reference there
            if (with_oracle)
                suite.check(got == dist[a], describe(sys, a, "nonzero count vs oracle"));
        }
    }
    return suite.take();
}

SuiteResult suite_fixture_three_factor(const SelftestOptions& opts) {
    Suite suite("fixtures-three-factor");
    OracleOptions oracle{.threads = opts.threads};
    for (std::uint32_t q : {2u, 3u}) {
        FieldPtr field = Field::make(q);
        SystemSpec sys = fixture_three_factor(field);
        const BigInt zero = count_product_zero(sys);
        suite.check(zero == three_factor_zero_count(q),
                    describe(sys, 0, "zero count vs reference polynomial at q = " +
                                         std::to_string(q)));
        std::vector<BigInt> dist;
        const bool with_oracle = oracle_fits(sys, opts.max_bits);
        if (with_oracle) {
            dist = value_distribution(sys, oracle);
            suite.check(zero == dist[0],
                        describe(sys, 0, "zero count vs oracle at q = " + std::to_string(q)));
        }
        for (std::uint32_t a = 1; a < q; ++a) {
            const BigInt got = count_product_nonzero(sys, a);
            suite.check(got == three_factor_nonzero_count(*field, a),
                        describe(sys, a, "nonzero count vs double-sum form"));
            if (with_oracle)
                suite.check(got == dist[a], describe(sys, a, "nonzero count vs oracle"));
        }
    }
    return suite.take();
}

SuiteResult suite_conservation(const SelftestOptions& opts) {
    Suite suite("conservation");
    InstanceGen gen(opts.seed);
    InstanceGen::Options gopts;
    for (int i = 0; i < opts.random_instances; ++i) {
        SystemSpec sys = gen.next(gopts);
        const std::uint32_t q = sys.field().q();
        BigInt sum = count_product_zero(sys);
        for (std::uint32_t a = 1; a < q; ++a) sum += count_product_nonzero(sys, a);
        suite.check(sum == big_pow(q, sys.n()),
                    describe(sys, 0, "sum over all targets must be q^n, got " + sum.get_str()));
    }
    return suite.take();
}

SuiteResult suite_oracle_equivalence(const SelftestOptions& opts) {
    Suite suite("oracle-equivalence");
    InstanceGen gen(opts.seed + 1);
    InstanceGen::Options gopts;
    gopts.max_points = std::uint64_t{1} << opts.max_bits;
    OracleOptions oracle{.threads = opts.threads};
    for (int i = 0; i < opts.random_instances; ++i) {
        SystemSpec sys = gen.next(gopts);
        const std::uint32_t q = sys.field().q();
        const std::vector<BigInt> dist = value_distribution(sys, oracle);
        suite.check(count_product_zero(sys) == dist[0], describe(sys, 0, "formula vs oracle"));
        for (std::uint32_t a = 1; a < q; ++a)
            suite.check(count_product_nonzero(sys, a) == dist[a],
                        describe(sys, a, "formula vs oracle"));
    }
    return suite.take();
}

SuiteResult suite_submatrix_invariance(const SelftestOptions& opts) {
    Suite suite("submatrix-invariance");
    InstanceGen gen(opts.seed + 2);
    InstanceGen::Options gopts;
    int accepted = 0;
    int spins = 0;
    while (accepted < opts.random_instances && spins < opts.random_instances * 50) {
        ++spins;
        SystemSpec sys = gen.next(gopts);
        const int k = sys.k();
        const int m = sys.m();
        std::vector<int> rows(static_cast<std::size_t>(k));
        std::iota(rows.begin(), rows.end(), 0);

        // every size-k column subset that yields an invertible block
        std::vector<std::vector<int>> choices;
        std::vector<int> cols(static_cast<std::size_t>(k));
        std::iota(cols.begin(), cols.end(), 0);
        while (true) {
            try {
                choose_submatrix(sys.coeffs(), rows, cols);
                choices.push_back(cols);
            } catch (const RankError&) {
            }
            int i = k - 1;
            while (i >= 0 && cols[static_cast<std::size_t>(i)] == m - k + i) --i;
            if (i < 0) break;
            ++cols[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                cols[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j) - 1] + 1;
        }
        if (choices.size() < 2) continue;
        ++accepted;

        std::vector<std::uint32_t> b0(static_cast<std::size_t>(k), 0);
        std::vector<std::uint32_t> b1(static_cast<std::size_t>(k));
        for (auto& v : b1) v = static_cast<std::uint32_t>(gen.uniform(0, sys.field().q() - 1));
        for (const auto& b : {b0, b1}) {
            const BigInt ref = count_system_with_cols(sys, rows, choices[0], b);
            bool all_equal = true;
            for (std::size_t c = 1; c < choices.size(); ++c)
                if (count_system_with_cols(sys, rows, choices[c], b) != ref) all_equal = false;
            suite.check(all_equal,
                        describe(sys, 0, "joint count must not depend on the column choice"));
        }
    }
    return suite.take();
}

SuiteResult suite_special_cases(const SelftestOptions& opts) {
    Suite suite("special-cases");
    InstanceGen gen(opts.seed + 3);
    OracleOptions oracle{.threads = opts.threads};

    InstanceGen::Options square;
    square.square = true;
    square.max_points = std::uint64_t{1} << opts.max_bits;
    for (int i = 0; i < opts.random_instances / 2; ++i) {
        SystemSpec sys = gen.next(square);
        const std::uint32_t q = sys.field().q();
        const std::vector<BigInt> dist = value_distribution(sys, oracle);
        for (std::uint32_t a = 1; a < q; ++a) {
            const BigInt special = count_special_mk(sys, a);
            suite.check(special == count_product_nonzero(sys, a),
                        describe(sys, a, "m = k closed form vs general path"));
            suite.check(special == dist[a], describe(sys, a, "m = k closed form vs oracle"));
        }
    }

    InstanceGen::Options diag;
    diag.diagonal_pair = true;
    diag.max_points = std::uint64_t{1} << opts.max_bits;
    for (int i = 0; i < opts.random_instances / 2; ++i) {
        SystemSpec sys = gen.next(diag);
        const std::uint32_t q = sys.field().q();
        const std::vector<BigInt> dist = value_distribution(sys, oracle);
        const BigInt zero = count_special_diag(sys, 0);
        suite.check(zero == count_product_zero(sys),
                    describe(sys, 0, "diagonal-pair closed form vs general path"));
        suite.check(zero == dist[0], describe(sys, 0, "diagonal-pair closed form vs oracle"));
        for (std::uint32_t a = 1; a < q; ++a) {
            const BigInt special = count_special_diag(sys, a);
            suite.check(special == count_product_nonzero(sys, a),
                        describe(sys, a, "diagonal-pair closed form vs general path"));
            suite.check(special == dist[a],
                        describe(sys, a, "diagonal-pair closed form vs oracle"));
        }
    }
    return suite.take();
}

SuiteResult suite_two_factor_route(const SelftestOptions& opts) {
    Suite suite("two-factor-route");
    InstanceGen gen(opts.seed + 4);
    InstanceGen::Options gopts;
    gopts.fixed_k = 2;
    for (int i = 0; i < opts.random_instances; ++i) {
        SystemSpec sys = gen.next(gopts);
        const std::uint32_t q = sys.field().q();
        suite.check(count_pair_product(sys, 0) == count_product_zero(sys),
                    describe(sys, 0, "k = 2 route vs general path"));
        for (std::uint32_t a = 1; a < q; ++a)
            suite.check(count_pair_product(sys, a) == count_product_nonzero(sys, a),
                        describe(sys, a, "k = 2 route vs general path"));
    }
    return suite.take();
}

} // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts) {
    std::vector<SuiteResult> out;
    out.push_back(suite_fixture_two_factor(opts));
    out.push_back(suite_fixture_three_factor(opts));
    out.push_back(suite_conservation(opts));
    out.push_back(suite_oracle_equivalence(opts));
    out.push_back(suite_submatrix_invariance(opts));
    out.push_back(suite_special_cases(opts));
    out.push_back(suite_two_factor_route(opts));
    return out;
}

} // namespace mlcount
