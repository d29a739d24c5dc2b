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

#include "mlcount/codes.hpp"

#include <numeric>

#include <json.hpp>

namespace mlcount {

using nlohmann::json;

CodeSpec CodeSpec::make(FieldPtr field, Partition partition) {
    return CodeSpec(std::move(field), std::move(partition));
}

CodeSpec parse_code(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("code file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("code file must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "field" && it.key() != "n" && it.key() != "partition")
            throw SchemaError("unknown key \"" + it.key() + "\" in code file");
    if (!doc.contains("field")) throw SchemaError("missing \"field\"");

    // reuse the problem-file machinery: a code file is a problem file without
    // A and a; the monomial X_1...X_m coefficients stand in for A
    json probe = doc;
    const std::size_t m = doc.contains("partition") ? doc.at("partition").size() : 0;
    probe["A"] = json::array({json::array()});
    for (std::size_t j = 0; j < m; ++j) probe["A"][0].push_back(j == 0 ? 1 : 0);
    probe["a"] = 0;
    CountQuery q = parse_problem(probe.dump(), /*require_rank=*/false);
    return CodeSpec::make(q.system.field_ptr(), q.system.partition());
}

std::string serialize_code(const CodeSpec& code) {
    json doc;
    doc["field"]["p"] = code.field().p();
    doc["field"]["e"] = code.field().degree();
    if (code.field().degree() > 1) doc["field"]["modulus"] = code.field().modulus();
    doc["n"] = code.partition().n();
    json jp = json::array();
    for (const auto& block : code.partition().blocks()) {
        json jb = json::array();
        for (int idx : block) jb.push_back(idx + 1);
        jp.push_back(std::move(jb));
    }
    doc["partition"] = std::move(jp);
    return doc.dump(2) + "\n";
}

BigInt codeword_weight(const CodeSpec& code, std::span<const std::uint32_t> word_coeffs) {
    if (static_cast<int>(word_coeffs.size()) != code.dimension())
        throw ShapeMismatch("coefficient vector must have m entries");
    bool all_zero = true;
    for (std::uint32_t c : word_coeffs) {
        if (c >= code.field().q()) throw SchemaError("coefficient is not an element index");
        if (c != 0) all_zero = false;
    }
    if (all_zero) return 0;
    SystemSpec sys = SystemSpec::relaxed(
        code.field_ptr(), code.partition(),
        Matrix::from_rows(code.field(), {{word_coeffs.begin(), word_coeffs.end()}}));
    // weight = #{x : f(x) != 0} = q^n - N(f, 0)
    return code.length() - count_single(sys, 0, 0);
}

BigInt min_distance(const CodeSpec& code) {
    const int s = code.max_block_size();
    return big_pow(code.field().q(), code.partition().n() - s) *
           big_pow(code.field().q() - 1, s);
}

BigInt wei_weight(const CodeSpec& code, const SubcodeBasis& basis) {
    const int h = basis.dimension();
    if (basis.coeffs.cols() != code.dimension())
        throw ShapeMismatch("basis rows must have m entries");
    SystemSpec sys = SystemSpec::checked(code.field_ptr(), code.partition(), basis.coeffs);
    std::vector<int> rows(static_cast<std::size_t>(h));
    std::iota(rows.begin(), rows.end(), 0);
    const std::vector<std::uint32_t> zeros(static_cast<std::size_t>(h), 0);
    // support = q^n - #common zeros; the joint count runs on the formula
    // path, so the length q^n never gets enumerated
    return code.length() - count_system(sys, rows, zeros);
}

BigInt gaussian_binomial(int m, int h, const BigInt& q) {
    if (h < 0 || h > m) return 0;
    // q-Pascal: [m, h] = [m-1, h-1] + q^h [m-1, h]
    std::vector<BigInt> row(static_cast<std::size_t>(m) + 1);
    row[0] = 1;
    for (int i = 1; i <= m; ++i)
        for (int j = i; j >= 1; --j)
            row[static_cast<std::size_t>(j)] =
                row[static_cast<std::size_t>(j) - 1] +
                big_pow(q, static_cast<std::uint64_t>(j)) * row[static_cast<std::size_t>(j)];
    return row[static_cast<std::size_t>(h)];
}

void for_each_subspace(const Field& field, int m, int h,
                       const std::function<void(const Matrix&)>& fn) {
    if (h < 1 || h > m) throw ShapeMismatch("subspace dimension must satisfy 0 < h <= m");

    // every subspace has a unique RREF basis: choose pivot columns
    // c_0 < ... < c_{h-1}, set the pivot entries, and fill the positions
    // right of each pivot in non-pivot columns with arbitrary field elements
    std::vector<int> pivots(static_cast<std::size_t>(h));
    std::iota(pivots.begin(), pivots.end(), 0);

    const auto emit_all_fillings = [&](const std::vector<int>& pcols) {
        std::vector<char> is_pivot(static_cast<std::size_t>(m), 0);
        for (int c : pcols) is_pivot[static_cast<std::size_t>(c)] = 1;
        std::vector<std::pair<int, int>> slots; // free (row, col) positions
        for (int t = 0; t < h; ++t)
            for (int c = pcols[static_cast<std::size_t>(t)] + 1; c < m; ++c)
                if (!is_pivot[static_cast<std::size_t>(c)]) slots.emplace_back(t, c);

        Matrix basis(field, h, m);
        for (int t = 0; t < h; ++t) basis.at(t, pcols[static_cast<std::size_t>(t)]) = 1;

        std::vector<std::uint32_t> fill(slots.size(), 0);
        while (true) {
            for (std::size_t s = 0; s < slots.size(); ++s)
                basis.at(slots[s].first, slots[s].second) = fill[s];
            fn(basis);
            std::size_t pos = 0;
            while (pos < fill.size() && ++fill[pos] == field.q()) fill[pos++] = 0;
            if (pos == fill.size()) break;
        }
    };

    // iterate pivot-column subsets in lexicographic order
    while (true) {
        emit_all_fillings(pivots);
        int i = h - 1;
        while (i >= 0 && pivots[static_cast<std::size_t>(i)] == m - h + i) --i;
        if (i < 0) break;
        ++pivots[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < h; ++j)
            pivots[static_cast<std::size_t>(j)] = pivots[static_cast<std::size_t>(j) - 1] + 1;
    }
}

std::vector<BigInt> weight_hierarchy(const CodeSpec& code, const BigInt& level_guard) {
    const int m = code.dimension();
    const BigInt q(code.field().q());
    for (int h = 1; h <= m; ++h) {
        const BigInt levels = gaussian_binomial(m, h, q);
        if (levels > level_guard)
            throw HierarchyTooLarge("level h = " + std::to_string(h) + " has " +
                                    levels.get_str() + " subspaces (guard " +
                                    level_guard.get_str() + ")");
    }

    std::vector<BigInt> d;
    d.reserve(static_cast<std::size_t>(m));
    for (int h = 1; h <= m; ++h) {
        BigInt best;
        bool first = true;
        for_each_subspace(code.field(), m, h, [&](const Matrix& basis) {
            BigInt w = wei_weight(code, SubcodeBasis{basis});
            if (first || w < best) {
                best = std::move(w);
                first = false;
            }
        });
        d.push_back(std::move(best));
    }
    return d;
}

} // namespace mlcount
