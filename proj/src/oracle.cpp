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

#include "mlcount/oracle.hpp"

#include <thread>

namespace mlcount {
namespace {

// Exhaustive enumeration of F_q^n as a mixed-radix counter over element
// indices.  Each point is evaluated from scratch: the m block products are
// computed once and shared by all k rows (the separated-variables structure),
// so a point costs O(n + k*m) field operations.  Nothing smarter on purpose.
BigInt points_total(const SystemSpec& sys, const OracleOptions& opts) {
    const BigInt total = big_pow(sys.field().q(), sys.n());
    if (!opts.force && total > BigInt(static_cast<unsigned long>(opts.max_points)))
        throw OracleTooLarge("q^n = " + total.get_str() + " exceeds the enumeration guard of " +
                             std::to_string(opts.max_points) + " points");
    return total;
}

// visit(range_begin, range_end, thread_index): ranges are contiguous and
// disjoint, so per-thread tallies combine deterministically.
template <typename Visit>
void run_ranges(std::uint64_t total, int threads, Visit visit) {
    if (threads <= 1 || total < 2) {
        visit(std::uint64_t{0}, total, 0);
        return;
    }
    const std::uint64_t t = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), total);
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (std::uint64_t w = 0; w < t; ++w) {
        const std::uint64_t lo = total / t * w + std::min<std::uint64_t>(w, total % t);
        const std::uint64_t hi = lo + total / t + (w < total % t ? 1 : 0);
        pool.emplace_back([=] { visit(lo, hi, static_cast<int>(w)); });
    }
    for (auto& th : pool) th.join();
}

// per_point(block_products) for every x in the index range [lo, hi)
template <typename Fn>
void enumerate_range(const SystemSpec& sys, std::uint64_t lo, std::uint64_t hi, Fn per_point) {
    const Field& f = sys.field();
    const std::uint32_t q = f.q();
    const int n = sys.n();
    const int m = sys.m();

    std::vector<std::uint32_t> x(static_cast<std::size_t>(n), 0);
    std::uint64_t rest = lo;
    for (int i = 0; i < n && rest > 0; ++i) {
        x[i] = static_cast<std::uint32_t>(rest % q);
        rest /= q;
    }

    std::vector<std::uint32_t> prod(static_cast<std::size_t>(m), 0);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        for (int j = 0; j < m; ++j) {
            std::uint32_t acc = 1;
            for (int tau : sys.partition().blocks()[j]) acc = f.mul(acc, x[tau]);
            prod[j] = acc;
        }
        per_point(prod);

        int pos = 0;
        while (pos < n && ++x[pos] == q) x[pos++] = 0;
    }
}

std::uint64_t total_or_throw_u64(const SystemSpec& sys, const OracleOptions& opts) {
    const BigInt total = points_total(sys, opts);
    if (!total.fits_ulong_p())
        throw OracleTooLarge("q^n does not fit the enumeration counter");
    return total.get_ui();
}

} // namespace

BigInt brute_count(const CountQuery& query, const OracleOptions& opts) {
    const SystemSpec& sys = query.system;
    const Field& f = sys.field();
    const std::uint64_t total = total_or_throw_u64(sys, opts);
    const int k = sys.k();
    const int m = sys.m();

    std::vector<std::uint64_t> tally(static_cast<std::size_t>(std::max(opts.threads, 1)), 0);
    run_ranges(total, opts.threads, [&](std::uint64_t lo, std::uint64_t hi, int w) {
        std::uint64_t local = 0;
        enumerate_range(sys, lo, hi, [&](const std::vector<std::uint32_t>& prod) {
            std::uint32_t value = 1;
            for (int i = 0; i < k && value != 0; ++i) {
                std::uint32_t row = 0;
                for (int j = 0; j < m; ++j)
                    row = f.add(row, f.mul(sys.coeffs().at(i, j), prod[j]));
                value = f.mul(value, row);
            }
            if (value == query.target) ++local;
        });
        tally[static_cast<std::size_t>(w)] = local;
    });

    BigInt out = 0;
    for (std::uint64_t t : tally) out += BigInt(static_cast<unsigned long>(t));
    return out;
}

BigInt brute_count_system(const SystemSpec& sys, std::span<const int> row_set,
                          std::span<const std::uint32_t> b, const OracleOptions& opts) {
    if (b.size() != row_set.size()) throw ShapeMismatch("b must have one entry per row");
    const Field& f = sys.field();
    const std::uint64_t total = total_or_throw_u64(sys, opts);
    const int m = sys.m();

    std::vector<std::uint64_t> tally(static_cast<std::size_t>(std::max(opts.threads, 1)), 0);
    run_ranges(total, opts.threads, [&](std::uint64_t lo, std::uint64_t hi, int w) {
        std::uint64_t local = 0;
        enumerate_range(sys, lo, hi, [&](const std::vector<std::uint32_t>& prod) {
            for (std::size_t t = 0; t < row_set.size(); ++t) {
                std::uint32_t row = 0;
                for (int j = 0; j < m; ++j)
                    row = f.add(row, f.mul(sys.coeffs().at(row_set[t], j), prod[j]));
                if (row != b[t]) return;
            }
            ++local;
        });
        tally[static_cast<std::size_t>(w)] = local;
    });

    BigInt out = 0;
    for (std::uint64_t t : tally) out += BigInt(static_cast<unsigned long>(t));
    return out;
}

std::vector<BigInt> value_distribution(const SystemSpec& sys, const OracleOptions& opts) {
    const Field& f = sys.field();
    const std::uint64_t total = total_or_throw_u64(sys, opts);
    const int k = sys.k();
    const int m = sys.m();
    const std::uint32_t q = f.q();

    const std::size_t workers = static_cast<std::size_t>(std::max(opts.threads, 1));
    std::vector<std::vector<std::uint64_t>> tally(workers,
                                                  std::vector<std::uint64_t>(q, 0));
    run_ranges(total, opts.threads, [&](std::uint64_t lo, std::uint64_t hi, int w) {
        auto& local = tally[static_cast<std::size_t>(w)];
        enumerate_range(sys, lo, hi, [&](const std::vector<std::uint32_t>& prod) {
            std::uint32_t value = 1;
            for (int i = 0; i < k && value != 0; ++i) {
                std::uint32_t row = 0;
                for (int j = 0; j < m; ++j)
                    row = f.add(row, f.mul(sys.coeffs().at(i, j), prod[j]));
                value = f.mul(value, row);
            }
            ++local[value];
        });
    });

    std::vector<BigInt> out(q, BigInt(0));
    for (const auto& local : tally)
        for (std::uint32_t a = 0; a < q; ++a) out[a] += BigInt(static_cast<unsigned long>(local[a]));
    return out;
}

} // namespace mlcount
