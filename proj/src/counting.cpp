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

#include "mlcount/counting.hpp"

#include <numeric>

namespace mlcount {

BigInt block_product_count(const Field& field, int d, bool target_is_zero) {
    const std::uint64_t q = field.q();
    if (target_is_zero) return big_pow(q, d) - big_pow(q - 1, d);
    return big_pow(q - 1, d - 1);
}

BlockDistribution block_distribution(const Field& field, int d) {
    return {d, block_product_count(field, d, true), block_product_count(field, d, false)};
}

BigInt count_single(const SystemSpec& sys, int row, std::uint32_t target) {
    const std::uint64_t q = sys.field().q();
    const int n = sys.n();

    // q^{n-1} prod_{l in S} (1 - ((q-1)/q)^{d_l - 1})
    //   = q^{n-1-sum(d_l - 1)} prod (q^{d_l-1} - (q-1)^{d_l-1}),
    // an integer because sum_{l in S} (d_l - 1) <= n - |S|.
    std::uint64_t spent = 0;
    BigInt prod = 1;
    bool support_empty = true;
    for (int l = 0; l < sys.m(); ++l) {
        if (sys.coeffs().at(row, l) == 0) continue;
        support_empty = false;
        const int d = sys.partition().block_size(l);
        spent += static_cast<std::uint64_t>(d) - 1;
        prod *= big_pow(q, d - 1) - big_pow(q - 1, d - 1);
    }
    const BigInt tail =
        support_empty ? big_pow(q, n - 1) : big_pow(q, n - 1 - spent) * prod;
    if (target == 0) return big_pow(q, n - 1) + BigInt(q - 1) * tail;
    return big_pow(q, n - 1) - tail;
}

namespace {

// Prepared evaluator for the joint count N(f_{i_1},...,f_{i_l}, b_1,...,b_l).
// The sum over the free variables collapses to a sum over the (m - l)
// free-block product values: the summand depends on the free assignment only
// through those products, and the number of assignments hitting a given value
// tuple is the product of per-block counts.  Cost q^{m-l} instead of
// q^{|I_free|}.
class SystemCounter {
  public:
    SystemCounter(const SystemSpec& sys, SubmatrixChoice choice)
        : field_(&sys.field()), choice_(std::move(choice)) {
        const Partition& part = sys.partition();
        for (int col : choice_.col_set)
            pivot_.push_back(block_distribution(*field_, part.block_size(col)));
        for (int col : choice_.complement_cols)
            free_.push_back(block_distribution(*field_, part.block_size(col)));
        // variables not constrained at all: q^{count} scale, none here (the
        // partition covers every variable, so every block is pivot or free)
    }

    const SubmatrixChoice& choice() const { return choice_; }

    BigInt count(std::span<const std::uint32_t> b) const {
        const Field& f = *field_;
        const int l = static_cast<int>(choice_.col_set.size());
        const int free_n = static_cast<int>(choice_.complement_cols.size());

        // c_t = sum_j a'_{t,j} b_j
        std::vector<std::uint32_t> c(l, 0);
        for (int t = 0; t < l; ++t) {
            std::uint32_t acc = 0;
            for (int j = 0; j < l; ++j)
                acc = f.add(acc, f.mul(choice_.b_inv.at(t, j), b[j]));
            c[t] = acc;
        }

        BigInt total = 0;
        std::vector<std::uint32_t> v(static_cast<std::size_t>(free_n), 0);
        while (true) {
            BigInt term = 1;
            for (int j = 0; j < free_n; ++j)
                term *= (v[j] == 0) ? free_[j].count_zero : free_[j].count_each_nonzero;
            for (int t = 0; t < l; ++t) {
                // pivot block product is forced to c_t - sum_j sigma^{t,j} v_j
                std::uint32_t w = c[t];
                for (int j = 0; j < free_n; ++j)
                    w = f.sub(w, f.mul(choice_.sigma.at(t, j), v[j]));
                term *= (w == 0) ? pivot_[t].count_zero : pivot_[t].count_each_nonzero;
            }
            total += term;

            int pos = 0;
            while (pos < free_n && ++v[pos] == f.q()) v[pos++] = 0;
            if (pos == free_n) break;
        }
        return total;
    }

  private:
    const Field* field_;
    SubmatrixChoice choice_;
    std::vector<BlockDistribution> pivot_;
    std::vector<BlockDistribution> free_;
};

std::vector<int> all_rows(const SystemSpec& sys) {
    std::vector<int> rows(static_cast<std::size_t>(sys.k()));
    std::iota(rows.begin(), rows.end(), 0);
    return rows;
}

} // namespace

BigInt count_system(const SystemSpec& sys, std::span<const int> row_set,
                    std::span<const std::uint32_t> b) {
    if (b.size() != row_set.size()) throw ShapeMismatch("b must have one entry per row");
    SystemCounter counter(sys, choose_submatrix(sys.coeffs(), row_set));
    return counter.count(b);
}

BigInt count_system_with_cols(const SystemSpec& sys, std::span<const int> row_set,
                              std::span<const int> col_set,
                              std::span<const std::uint32_t> b) {
    if (b.size() != row_set.size()) throw ShapeMismatch("b must have one entry per row");
    SystemCounter counter(sys, choose_submatrix(sys.coeffs(), row_set, col_set));
    return counter.count(b);
}

BigInt count_product_zero(const SystemSpec& sys) {
    sys.require_full_rank();
    const int k = sys.k();

    BigInt total = 0;
    for (int i = 0; i < k; ++i) total += count_single(sys, i, 0);

    // inclusion-exclusion layers l = 2..k over row subsets
    std::vector<int> rows;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        const int l = __builtin_popcount(mask);
        if (l < 2) continue;
        rows.clear();
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) rows.push_back(i);
        const std::vector<std::uint32_t> b(static_cast<std::size_t>(l), 0);
        const BigInt term = count_system(sys, rows, b);
        if (l % 2 == 0)
            total -= term;
        else
            total += term;
    }
    return total;
}

BigInt count_product_nonzero(const SystemSpec& sys, std::uint32_t target) {
    if (target == 0) throw ZeroTarget("a = 0 must go through the inclusion-exclusion path");
    sys.require_full_rank();
    const Field& f = sys.field();
    const int k = sys.k();
    const std::vector<int> rows = all_rows(sys);
    SystemCounter counter(sys, choose_submatrix(sys.coeffs(), rows));

    // iterate (a_1, ..., a_{k-1}) over (F_q*)^{k-1}; a_k is forced
    std::vector<std::uint32_t> b(static_cast<std::size_t>(k), 1);
    BigInt total = 0;
    while (true) {
        std::uint32_t prefix = 1;
        for (int i = 0; i + 1 < k; ++i) prefix = f.mul(prefix, b[i]);
        b[static_cast<std::size_t>(k) - 1] = f.div(target, prefix);
        total += counter.count(b);

        int pos = 0;
        while (pos + 1 < k && ++b[pos] == f.q()) b[pos++] = 1;
        if (pos + 1 >= k) break;
    }
    return total;
}

BigInt count_special_mk(const SystemSpec& sys, std::uint32_t target) {
    if (sys.m() != sys.k())
        throw ShapeMismatch("the m = k closed form needs a square coefficient matrix");
    if (target == 0)
        throw ShapeMismatch("the m = k closed form covers nonzero targets only");
    sys.require_full_rank();
    const Field& f = sys.field();
    const int m = sys.m();
    const Matrix a_inv = invert(sys.coeffs());

    std::vector<BlockDistribution> dist;
    for (int j = 0; j < m; ++j)
        dist.push_back(block_distribution(f, sys.partition().block_size(j)));

    // sum over (a_1,...,a_{m-1}) in (F_q*)^{m-1}; the last factor value is
    // a / (a_1 ... a_{m-1})
    std::vector<std::uint32_t> t(static_cast<std::size_t>(m), 1);
    BigInt total = 0;
    while (true) {
        std::uint32_t prefix = 1;
        for (int i = 0; i + 1 < m; ++i) prefix = f.mul(prefix, t[i]);
        t[static_cast<std::size_t>(m) - 1] = f.div(target, prefix);

        BigInt term = 1;
        for (int i = 0; i < m; ++i) {
            std::uint32_t w = 0;
            for (int j = 0; j < m; ++j) w = f.add(w, f.mul(a_inv.at(i, j), t[j]));
            term *= (w == 0) ? dist[i].count_zero : dist[i].count_each_nonzero;
        }
        total += term;

        int pos = 0;
        while (pos + 1 < m && ++t[pos] == f.q()) t[pos++] = 1;
        if (pos + 1 >= m) break;
    }
    return total;
}

bool has_diagonal_pair_shape(const SystemSpec& sys) {
    const int k = sys.k();
    if (sys.m() != 2 * k) return false;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < 2 * k; ++j) {
            const bool on_diag = (j == i) || (j == k + i);
            if (on_diag && sys.coeffs().at(i, j) == 0) return false;
            if (!on_diag && sys.coeffs().at(i, j) != 0) return false;
        }
    return true;
}

BigInt count_special_diag(const SystemSpec& sys, std::uint32_t target) {
    if (!has_diagonal_pair_shape(sys))
        throw ShapeMismatch("system is not of the (D1 D2) diagonal-pair shape");
    const Field& f = sys.field();
    const std::uint64_t q = f.q();
    const int k = sys.k();
    const int n = sys.n();
    const Partition& part = sys.partition();

    // per pair i: E_i = (q^{d-1} - (q-1)^{d-1})(q^{d'-1} - (q-1)^{d'-1})
    // with d = |J_i|, d' = |J_{k+i}|
    std::vector<BigInt> pair_excess(static_cast<std::size_t>(k));
    std::vector<int> pair_span(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const int d = part.block_size(i);
        const int d2 = part.block_size(k + i);
        pair_excess[i] = (big_pow(q, d - 1) - big_pow(q - 1, d - 1)) *
                         (big_pow(q, d2 - 1) - big_pow(q - 1, d2 - 1));
        pair_span[i] = d + d2;
    }

    if (target != 0) {
        // (q-1)^{k-1} prod_i [ q^{D_i - 1} - q * E_i ]
        BigInt total = big_pow(q - 1, k - 1);
        for (int i = 0; i < k; ++i)
            total *= big_pow(q, pair_span[i] - 1) - BigInt(q) * pair_excess[i];
        return total;
    }

    // inclusion-exclusion over row subsets; the joint zero count of a subset
    // factors across its pairs:
    //   q^{n - sum D_i} prod_i [ q^{D_i - 1} + q (q-1) E_i ]
    std::vector<BigInt> g(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        g[i] = big_pow(q, pair_span[i] - 1) + BigInt(q) * BigInt(q - 1) * pair_excess[i];

    BigInt total = 0;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        BigInt term = 1;
        std::uint64_t span = 0;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                term *= g[i];
                span += static_cast<std::uint64_t>(pair_span[i]);
            }
        term *= big_pow(q, static_cast<std::uint64_t>(n) - span);
        if (__builtin_popcount(mask) % 2 == 0)
            total -= term;
        else
            total += term;
    }
    return total;
}

BigInt count_pair_product(const SystemSpec& sys, std::uint32_t target) {
    if (sys.k() != 2) throw ShapeMismatch("the two-factor route needs k = 2");
    sys.require_full_rank();
    const Field& f = sys.field();
    const std::uint64_t q = f.q();
    const int n = sys.n();
    const std::vector<int> rows = {0, 1};
    const SubmatrixChoice choice = choose_submatrix(sys.coeffs(), rows);
    const Partition& part = sys.partition();

    std::vector<BlockDistribution> pivot, free_blocks;
    for (int col : choice.col_set) pivot.push_back(block_distribution(f, part.block_size(col)));
    for (int col : choice.complement_cols)
        free_blocks.push_back(block_distribution(f, part.block_size(col)));
    const int free_n = static_cast<int>(free_blocks.size());

    // weighted sum over free-block values of the two pivot factors, with the
    // pivot products forced to w_t = c_t - sum_j sigma^{t,j} v_j
    const auto joint = [&](std::uint32_t c1, std::uint32_t c2) {
        std::vector<std::uint32_t> v(static_cast<std::size_t>(free_n), 0);
        BigInt total = 0;
        while (true) {
            BigInt term = 1;
            for (int j = 0; j < free_n; ++j)
                term *= (v[j] == 0) ? free_blocks[j].count_zero
                                    : free_blocks[j].count_each_nonzero;
            const std::uint32_t c[2] = {c1, c2};
            for (int t = 0; t < 2; ++t) {
                std::uint32_t w = c[t];
                for (int j = 0; j < free_n; ++j)
                    w = f.sub(w, f.mul(choice.sigma.at(t, j), v[j]));
                term *= (w == 0) ? pivot[t].count_zero : pivot[t].count_each_nonzero;
            }
            total += term;
            int pos = 0;
            while (pos < free_n && ++v[pos] == f.q()) v[pos++] = 0;
            if (pos == free_n) break;
        }
        return total;
    };

    if (target == 0) {
        // 2 q^{n-1} + (q-1) q^{n-1} (P_1 + P_2) - N(f_1, f_2, 0, 0)
        BigInt head = 2 * big_pow(q, n - 1);
        for (int row = 0; row < 2; ++row) {
            std::uint64_t spent = 0;
            BigInt prod = 1;
            for (int l = 0; l < sys.m(); ++l) {
                if (sys.coeffs().at(row, l) == 0) continue;
                const int d = part.block_size(l);
                spent += static_cast<std::uint64_t>(d) - 1;
                prod *= big_pow(q, d - 1) - big_pow(q - 1, d - 1);
            }
            head += BigInt(q - 1) * big_pow(q, n - 1 - spent) * prod;
        }
        return head - joint(0, 0);
    }

    // sum over u in F_q* of the joint count at (b_1, b_2) = (u, a/u), with
    // c_t = a'_{t,1} u + a'_{t,2} (a/u) taken row-by-row
    BigInt total = 0;
    for (std::uint32_t u = 1; u < f.q(); ++u) {
        const std::uint32_t au = f.div(target, u);
        const std::uint32_t c1 =
            f.add(f.mul(choice.b_inv.at(0, 0), u), f.mul(choice.b_inv.at(0, 1), au));
        const std::uint32_t c2 =
            f.add(f.mul(choice.b_inv.at(1, 0), u), f.mul(choice.b_inv.at(1, 1), au));
        total += joint(c1, c2);
    }
    return total;
}

CountResult count(const CountQuery& query, Method method, const OracleOptions& oracle_opts) {
    const SystemSpec& sys = query.system;
    const std::uint32_t a = query.target;

    const auto t0 = std::chrono::steady_clock::now();
    BigInt value;
    std::string label;

    switch (method) {
    case Method::Oracle:
        value = brute_count(query, oracle_opts);
        label = "oracle";
        break;
    case Method::Special:
        if (has_diagonal_pair_shape(sys)) {
            value = count_special_diag(sys, a);
            label = "special-diag";
        } else if (sys.m() == sys.k() && a != 0) {
            value = count_special_mk(sys, a);
            label = "special-mk";
        } else {
            throw ShapeMismatch("no special closed form matches this system");
        }
        break;
    case Method::General:
        value = (a == 0) ? count_product_zero(sys) : count_product_nonzero(sys, a);
        label = (a == 0) ? "general-IE" : "general-factorization";
        break;
    case Method::Auto:
        if (has_diagonal_pair_shape(sys)) {
            value = count_special_diag(sys, a);
            label = "special-diag";
        } else if (sys.m() == sys.k() && a != 0) {
            value = count_special_mk(sys, a);
            label = "special-mk";
        } else if (a == 0) {
            value = count_product_zero(sys);
            label = "general-IE";
        } else {
            value = count_product_nonzero(sys, a);
            label = "general-factorization";
        }
        break;
    }
    const auto t1 = std::chrono::steady_clock::now();
    return {std::move(value), std::move(label),
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0)};
}

} // namespace mlcount
