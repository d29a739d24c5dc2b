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

#include "mlcount/model.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace mlcount {

using nlohmann::json;

namespace {

// guards from the CLI contract: dimensions stay small, files stay sane
constexpr int kMaxDim = 16;
constexpr int kMaxN = 1 << 20;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok)
            throw SchemaError(std::string("unknown key \"") + it.key() + "\" in " + where);
    }
}

std::int64_t require_int(const json& v, const char* what) {
    if (!v.is_number_integer())
        throw SchemaError(std::string(what) + " must be an integer");
    return v.get<std::int64_t>();
}

FieldPtr field_from_json(const json& jf) {
    if (!jf.is_object()) throw SchemaError("\"field\" must be an object");
    reject_unknown_keys(jf, {"p", "e", "modulus"}, "\"field\"");
    if (!jf.contains("p")) throw SchemaError("\"field\" needs \"p\"");
    const std::int64_t p = require_int(jf.at("p"), "field.p");
    std::int64_t e = 1;
    if (jf.contains("e")) e = require_int(jf.at("e"), "field.e");
    if (p < 2 || p > static_cast<std::int64_t>(Field::kMaxQ))
        throw SchemaError("field.p out of range");
    if (e < 1 || e > 32) throw SchemaError("field.e out of range");
    std::optional<std::vector<std::uint32_t>> modulus;
    if (jf.contains("modulus")) {
        if (!jf.at("modulus").is_array()) throw SchemaError("field.modulus must be an array");
        std::vector<std::uint32_t> coeffs;
        for (const auto& c : jf.at("modulus")) {
            const std::int64_t v = require_int(c, "modulus coefficient");
            if (v < 0 || v >= p) throw ReducibleModulus("modulus coefficient out of [0, p)");
            coeffs.push_back(static_cast<std::uint32_t>(v));
        }
        modulus = std::move(coeffs);
    }
    return Field::make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(e),
                       std::move(modulus));
}

json field_to_json(const Field& f) {
    json jf;
    jf["p"] = f.p();
    jf["e"] = f.degree();
    if (f.degree() > 1) jf["modulus"] = f.modulus();
    return jf;
}

Partition partition_from_json(const json& doc) {
    if (!doc.contains("n")) throw SchemaError("missing \"n\"");
    const std::int64_t n = require_int(doc.at("n"), "n");
    if (n < 1 || n > kMaxN) throw SchemaError("n out of range");
    if (!doc.contains("partition") || !doc.at("partition").is_array())
        throw SchemaError("missing \"partition\" array");
    std::vector<std::vector<int>> blocks;
    for (const auto& jb : doc.at("partition")) {
        if (!jb.is_array()) throw SchemaError("partition blocks must be arrays");
        std::vector<int> block;
        for (const auto& ji : jb) {
            const std::int64_t idx = require_int(ji, "variable index");
            if (idx < 1 || idx > n)
                throw PartitionError("variable index " + std::to_string(idx) +
                                     " outside 1.." + std::to_string(n));
            block.push_back(static_cast<int>(idx) - 1); // file is 1-based
        }
        blocks.push_back(std::move(block));
    }
    return Partition::checked(static_cast<int>(n), std::move(blocks));
}

json partition_to_json(const Partition& p) {
    json jp = json::array();
    for (const auto& block : p.blocks()) {
        json jb = json::array();
        for (int idx : block) jb.push_back(idx + 1);
        jp.push_back(std::move(jb));
    }
    return jp;
}

Matrix matrix_from_json(const json& ja, const Field& field, int m) {
    if (!ja.is_array() || ja.empty()) throw SchemaError("\"A\" must be a nonempty array of rows");
    std::vector<std::vector<std::uint32_t>> rows;
    for (const auto& jr : ja) {
        if (!jr.is_array()) throw SchemaError("\"A\" rows must be arrays");
        std::vector<std::uint32_t> row;
        for (const auto& je : jr) {
            const std::int64_t v = require_int(je, "matrix entry");
            if (v < 0 || v >= static_cast<std::int64_t>(field.q()))
                throw SchemaError("matrix entry " + std::to_string(v) +
                                  " is not an element index of F_" + std::to_string(field.q()));
            row.push_back(static_cast<std::uint32_t>(v));
        }
        if (static_cast<int>(row.size()) != m)
            throw SchemaError("each row of \"A\" must have m = " + std::to_string(m) +
                              " entries");
        rows.push_back(std::move(row));
    }
    if (static_cast<int>(rows.size()) > kMaxDim)
        throw DimensionError("k exceeds the guard of " + std::to_string(kMaxDim));
    return Matrix::from_rows(field, rows);
}

} // namespace

Partition Partition::checked(int n, std::vector<std::vector<int>> blocks) {
    if (n < 1) throw PartitionError("n must be >= 1");
    if (blocks.empty()) throw PartitionError("partition needs at least one block");
    if (static_cast<int>(blocks.size()) > n)
        throw PartitionError("more blocks than variables (m > n)");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int covered = 0;
    for (auto& block : blocks) {
        if (block.empty()) throw PartitionError("empty partition block");
        std::sort(block.begin(), block.end());
        for (int idx : block) {
            if (idx < 0 || idx >= n)
                throw PartitionError("variable index out of range");
            if (seen[static_cast<std::size_t>(idx)])
                throw PartitionError("variable " + std::to_string(idx + 1) +
                                     " appears in two blocks");
            seen[static_cast<std::size_t>(idx)] = 1;
            ++covered;
        }
    }
    if (covered != n) throw PartitionError("partition does not cover every variable");
    return Partition(n, std::move(blocks));
}

int Partition::max_block_size() const {
    int s = 0;
    for (const auto& b : blocks_) s = std::max(s, static_cast<int>(b.size()));
    return s;
}

std::vector<int> free_support(const Partition& partition, std::span<const int> cols) {
    std::vector<int> out;
    for (int j : cols)
        out.insert(out.end(), partition.blocks()[j].begin(), partition.blocks()[j].end());
    std::sort(out.begin(), out.end());
    return out;
}

static void check_shape(const Field& field, const Partition& partition, const Matrix& coeffs) {
    if (!(coeffs.field() == field)) throw FieldMismatch("matrix field differs from system field");
    if (coeffs.cols() != partition.m())
        throw ShapeMismatch("matrix has " + std::to_string(coeffs.cols()) +
                            " columns but the partition has " + std::to_string(partition.m()) +
                            " blocks");
    if (coeffs.rows() < 1) throw ShapeMismatch("coefficient matrix needs at least one row");
}

SystemSpec SystemSpec::checked(FieldPtr field, Partition partition, Matrix coeffs) {
    check_shape(*field, partition, coeffs);
    if (coeffs.rows() > partition.m())
        throw DimensionError("k = " + std::to_string(coeffs.rows()) + " factors exceed m = " +
                             std::to_string(partition.m()) + " monomials");
    const int rank = rref_rank(coeffs).rank;
    if (rank < coeffs.rows())
        throw RankError("coefficient matrix has rank " + std::to_string(rank) + " < k = " +
                        std::to_string(coeffs.rows()));
    return SystemSpec(std::move(field), std::move(partition), std::move(coeffs), rank);
}

SystemSpec SystemSpec::relaxed(FieldPtr field, Partition partition, Matrix coeffs) {
    check_shape(*field, partition, coeffs);
    const int rank = rref_rank(coeffs).rank;
    return SystemSpec(std::move(field), std::move(partition), std::move(coeffs), rank);
}

void SystemSpec::require_full_rank() const {
    if (rank_ < k())
        throw RankError("formula path requires rank(A) = k, got rank " +
                        std::to_string(rank_) + " < " + std::to_string(k()));
}

bool SystemSpec::row_is_zero(int i) const {
    for (int j = 0; j < m(); ++j)
        if (coeffs_.at(i, j) != 0) return false;
    return true;
}

CountQuery parse_problem(std::string_view text, bool require_rank) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("problem file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("problem file must be a JSON object");
    reject_unknown_keys(doc, {"field", "n", "partition", "A", "a"}, "problem file");
    if (!doc.contains("field")) throw SchemaError("missing \"field\"");
    if (!doc.contains("A")) throw SchemaError("missing \"A\"");
    if (!doc.contains("a")) throw SchemaError("missing \"a\"");

    FieldPtr field = field_from_json(doc.at("field"));
    Partition partition = partition_from_json(doc);
    if (partition.m() > kMaxDim)
        throw DimensionError("m exceeds the guard of " + std::to_string(kMaxDim));
    Matrix coeffs = matrix_from_json(doc.at("A"), *field, partition.m());

    if (coeffs.rows() > partition.m())
        throw DimensionError("k = " + std::to_string(coeffs.rows()) + " factors exceed m = " +
                             std::to_string(partition.m()) + " monomials");

    const std::int64_t a = require_int(doc.at("a"), "\"a\"");
    if (a < 0 || a >= static_cast<std::int64_t>(field->q()))
        throw SchemaError("target \"a\" is not an element index of F_" +
                          std::to_string(field->q()));

    SystemSpec sys = require_rank
                         ? SystemSpec::checked(field, std::move(partition), std::move(coeffs))
                         : SystemSpec::relaxed(field, std::move(partition), std::move(coeffs));
    return CountQuery{std::move(sys), static_cast<std::uint32_t>(a)};
}

std::string serialize_problem(const CountQuery& query) {
    const SystemSpec& sys = query.system;
    json doc;
    doc["field"] = field_to_json(sys.field());
    doc["n"] = sys.n();
    doc["partition"] = partition_to_json(sys.partition());
    doc["A"] = sys.coeffs().row_vectors();
    doc["a"] = query.target;
    return doc.dump(2) + "\n";
}

std::vector<Diagnostic> validate_system(const SystemSpec& sys, bool require_rank) {
    std::vector<Diagnostic> out;
    if (sys.k() > sys.m())
        out.push_back({Diagnostic::Severity::Error, "dimension",
                       "k = " + std::to_string(sys.k()) + " exceeds m = " +
                           std::to_string(sys.m())});
    if (sys.rank() < sys.k()) {
        const auto sev =
            require_rank ? Diagnostic::Severity::Error : Diagnostic::Severity::Warning;
        out.push_back({sev, "rank",
                       "rank(A) = " + std::to_string(sys.rank()) + " < k = " +
                           std::to_string(sys.k())});
    }
    for (int i = 0; i < sys.k(); ++i)
        if (sys.row_is_zero(i))
            out.push_back({Diagnostic::Severity::Warning, "zero-row",
                           "row " + std::to_string(i + 1) + " is zero (factor is the zero "
                           "polynomial)"});
    return out;
}

} // namespace mlcount
