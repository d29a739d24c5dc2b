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

#ifndef MLCOUNT_GF_HPP_
#define MLCOUNT_GF_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "mlcount/errors.hpp"

namespace mlcount {

class Field;
class FieldElement;
using FieldPtr = std::shared_ptr<const Field>;

/// The finite field F_q, q = p^e.  Elements are canonical indices in [0, q):
/// the index encodes the coefficient vector (c_0, ..., c_{e-1}) base p,
/// little-endian, of the residue class modulo the (monic, irreducible)
/// modulus polynomial.  Index 0 is the additive identity, index 1 the
/// multiplicative identity.
///
/// Immutable after construction; safe to share across threads.
class Field {
  public:
    // q is capped at 2^20; the cap keeps exhaustive paths tractable.
    static constexpr std::uint64_t kMaxQ = 1u << 20;

    /// Builds and validates F_{p^e}.  A modulus is required for e > 1 unless
    /// a built-in table entry exists for (p, e) (all q <= 32); the modulus in
    /// use is observable via modulus() and is echoed by the serializers.
    static FieldPtr make(std::uint32_t p, std::uint32_t e = 1,
                         std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t degree() const noexcept { return e_; }
    std::uint32_t q() const noexcept { return q_; }
    /// Monic modulus, little-endian coefficients, size e+1; empty when e = 1.
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    // Arithmetic on canonical indices.  All operations are exact and pure.
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const; // throws DivisionByZero on 0
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t n) const;

    /// kappa(v) = q-1 if v = 0, -1 otherwise.
    std::int64_t kappa(std::uint32_t v) const noexcept {
        return v == 0 ? static_cast<std::int64_t>(q_) - 1 : -1;
    }

    /// Smallest index whose multiplicative order is q-1.  Deterministic.
    std::uint32_t primitive_element_index() const noexcept { return primitive_; }
    FieldElement primitive_element() const;

    /// True iff v is a nonzero square (for q even every nonzero v qualifies).
    bool is_nonzero_square(std::uint32_t v) const;

    /// All q (or q-1) elements in ascending index order.
    std::vector<FieldElement> elements(bool nonzero_only = false) const;

    FieldElement element(std::uint32_t index) const; // range-checked
    FieldElement zero() const;
    FieldElement one() const;

    bool operator==(const Field& other) const noexcept {
        return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
    }

  private:
    Field() = default;

    std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv_slow(std::uint32_t a) const;
    void build_tables();
    std::uint32_t find_primitive() const;

    std::uint32_t p_ = 0;
    std::uint32_t e_ = 1;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_; // little-endian, monic; empty for e = 1
    std::uint32_t primitive_ = 0;

    // log/antilog tables (built for extension fields with q <= 2^16)
    bool tables_ = false;
    std::vector<std::uint32_t> exp_; // exp_[i] = g^i, i in [0, q-1)
    std::vector<std::uint32_t> log_; // log_[exp_[i]] = i; log_[0] unused
};

/// An element of a Field, held as (parent pointer, canonical index).  The
/// parent Field must outlive the element.
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(const Field& field, std::uint32_t index) : f_(&field), idx_(index) {}

    std::uint32_t index() const noexcept { return idx_; }
    const Field& field() const { return *f_; }
    bool is_zero() const noexcept { return idx_ == 0; }
    bool is_one() const noexcept { return idx_ == 1; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement pow(std::uint64_t n) const;

    std::int64_t kappa() const { return f_->kappa(idx_); }

    bool operator==(const FieldElement& o) const {
        return idx_ == o.idx_ && (f_ == o.f_ || (f_ && o.f_ && *f_ == *o.f_));
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

  private:
    const Field* same_field(const FieldElement& o) const; // throws FieldMismatch

    const Field* f_ = nullptr;
    std::uint32_t idx_ = 0;
};

/// Multiplicative order of a nonzero element (exhaustive; q is small).
std::uint64_t multiplicative_order(const Field& f, std::uint32_t a);

/// Deterministic primality check by trial division.
bool is_prime_u64(std::uint64_t n);

} // namespace mlcount

#endif // MLCOUNT_GF_HPP_
