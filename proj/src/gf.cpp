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

#include "mlcount/gf.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace mlcount {
namespace {

// ---- polynomial arithmetic over F_p -------------------------------------
// Little-endian coefficient vectors, normalized (no trailing zeros; the zero
// polynomial is the empty vector).  Only used for construction-time work and
// for fields too large for the log tables, so clarity beats speed here.

using Poly = std::vector<std::uint32_t>;

void normalize(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>(
                (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
    normalize(r);
    return r;
}

std::uint32_t mod_inv_prime(std::uint32_t a, std::uint32_t p) {
    // extended Euclid in Z; p prime, a nonzero mod p
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a % p;
    while (new_r != 0) {
        std::int64_t qq = r / new_r;
        t = std::exchange(new_t, t - qq * new_t);
        r = std::exchange(new_r, r - qq * new_r);
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

// a mod m, m monic of degree >= 1
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        if (lead != 0) {
            for (std::size_t i = 0; i < m.size(); ++i) {
                const std::uint64_t sub = static_cast<std::uint64_t>(lead) * m[i] % p;
                std::uint32_t& c = a[shift + i];
                c = static_cast<std::uint32_t>((c + p - sub) % p);
            }
        }
        a.pop_back();
        normalize(a);
        if (a.size() <= dm) break;
    }
    normalize(a);
    return a;
}

// division with remainder by an arbitrary nonzero divisor d
struct PolyDiv {
    Poly quot;
    Poly rem;
};
PolyDiv poly_divmod(Poly a, const Poly& d, std::uint32_t p) {
    const std::uint32_t lead_inv = mod_inv_prime(d.back(), p);
    Poly quot(a.size() >= d.size() ? a.size() - d.size() + 1 : 0, 0);
    while (a.size() >= d.size() && !a.empty()) {
        const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
        const std::size_t shift = a.size() - d.size();
        quot[shift] = static_cast<std::uint32_t>(factor);
        for (std::size_t i = 0; i < d.size(); ++i) {
            const std::uint64_t sub = factor * d[i] % p;
            std::uint32_t& c = a[shift + i];
            c = static_cast<std::uint32_t>((c + p - sub) % p);
        }
        normalize(a);
    }
    normalize(quot);
    return {std::move(quot), std::move(a)};
}

Poly poly_rem(Poly a, const Poly& d, std::uint32_t p) {
    return poly_divmod(std::move(a), d, p).rem;
}

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    normalize(a);
    return a;
}

// u with a*u = 1 mod m, via the extended Euclid run over F_p[x];
// m is irreducible, so the gcd is a nonzero constant
Poly poly_inv_mod(const Poly& a, const Poly& m, std::uint32_t p) {
    Poly r0 = m, r1 = a;
    Poly t0, t1 = {1};
    while (!r1.empty()) {
        PolyDiv d = poly_divmod(r0, r1, p);
        r0 = std::exchange(r1, std::move(d.rem));
        Poly next = poly_sub(t0, poly_mul(d.quot, t1, p), p);
        t0 = std::exchange(t1, std::move(next));
    }
    const std::uint32_t scale = mod_inv_prime(r0[0], p);
    for (auto& c : t0) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * scale % p);
    return poly_rem(std::move(t0), m, p);
}

bool poly_is_zero(const Poly& a) { return a.empty(); }

// Exhaustive irreducibility test: a polynomial of degree e is reducible iff
// it has a monic divisor of degree in [1, e/2].  p^(e/2) <= sqrt(q) <= 2^10
// under the field-size guard, so trial division over all candidates is cheap.
bool is_irreducible(const Poly& m, std::uint32_t p) {
    const std::size_t e = m.size() - 1;
    for (std::size_t d = 1; d <= e / 2; ++d) {
        // all monic candidates of degree d: odometer over the low d coefficients
        Poly cand(d + 1, 0);
        cand[d] = 1;
        while (true) {
            if (poly_is_zero(poly_rem(m, cand, p))) return false;
            std::size_t pos = 0;
            while (pos < d && ++cand[pos] == p) cand[pos++] = 0;
            if (pos == d) break;
        }
    }
    return true;
}

// built-in monic irreducible moduli for every (p, e) with e > 1, p^e <= 32
struct BuiltinModulus {
    std::uint32_t p, e;
    std::array<std::uint32_t, 6> coeffs; // little-endian, size e+1 used
};
constexpr BuiltinModulus kBuiltinModuli[] = {
    {2, 2, {1, 1, 1, 0, 0, 0}},    // x^2 + x + 1
    {2, 3, {1, 1, 0, 1, 0, 0}},    // x^3 + x + 1
    {2, 4, {1, 1, 0, 0, 1, 0}},    // x^4 + x + 1
    {2, 5, {1, 0, 1, 0, 0, 1}},    // x^5 + x^2 + 1
    {3, 2, {1, 0, 1, 0, 0, 0}},    // x^2 + 1
    {3, 3, {1, 2, 0, 1, 0, 0}},    // x^3 + 2x + 1
    {5, 2, {2, 0, 1, 0, 0, 0}},    // x^2 + 2
};

std::vector<std::uint32_t> builtin_modulus(std::uint32_t p, std::uint32_t e) {
    for (const auto& b : kBuiltinModuli)
        if (b.p == p && b.e == e)
            return {b.coeffs.begin(), b.coeffs.begin() + e + 1};
    return {};
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) fs.push_back(n);
    return fs;
}

constexpr std::uint32_t kTableCutoff = 1u << 16;

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t e,
                     std::optional<std::vector<std::uint32_t>> modulus) {
    if (!is_prime_u64(p)) throw NotPrime("p = " + std::to_string(p) + " is not prime");
    if (e < 1) throw SchemaError("extension degree e must be >= 1");

    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > kMaxQ)
            throw FieldTooLarge("q = p^e exceeds the 2^20 guard (p = " + std::to_string(p) +
                                ", e = " + std::to_string(e) + ")");
    }

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->e_ = e;
    f->q_ = static_cast<std::uint32_t>(q);

    if (e > 1) {
        std::vector<std::uint32_t> mod;
        if (modulus.has_value()) {
            mod = *modulus;
            if (mod.size() != static_cast<std::size_t>(e) + 1)
                throw ReducibleModulus("modulus must list e+1 coefficients");
            for (std::uint32_t c : mod)
                if (c >= p) throw ReducibleModulus("modulus coefficient out of [0, p)");
            if (mod.back() != 1) throw ReducibleModulus("modulus must be monic");
            if (!is_irreducible(mod, p))
                throw ReducibleModulus("modulus is reducible over F_p");
        } else {
            mod = builtin_modulus(p, e);
            if (mod.empty())
                throw SchemaError("no built-in modulus for (p, e) = (" + std::to_string(p) +
                                  ", " + std::to_string(e) + "); supply one");
        }
        f->modulus_ = std::move(mod);
    }
    // a modulus passed for e = 1 is ignored

    if (f->q_ <= kTableCutoff && e > 1) f->build_tables(); // also sets primitive_
    if (!f->tables_) f->primitive_ = f->find_primitive();
    return f;
}

// digit view of an index: index = sum c_i p^i
static inline void to_digits(std::uint32_t idx, std::uint32_t p, std::uint32_t e,
                             std::uint32_t* out) {
    for (std::uint32_t i = 0; i < e; ++i) {
        out[i] = idx % p;
        idx /= p;
    }
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
    if (e_ == 1) return (a + b) % p_;
    if (p_ == 2) return a ^ b;
    std::uint32_t r = 0, scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        r += ((a % p_) + (b % p_)) % p_ * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return r;
}

std::uint32_t Field::neg(std::uint32_t a) const {
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    std::uint32_t r = 0, scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        const std::uint32_t d = a % p_;
        r += (d == 0 ? 0 : p_ - d) * scale;
        a /= p_;
        scale *= p_;
    }
    return r;
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (e_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    if (tables_) {
        std::uint64_t s = static_cast<std::uint64_t>(log_[a]) + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    return mul_slow(a, b);
}

std::uint32_t Field::mul_slow(std::uint32_t a, std::uint32_t b) const {
    Poly pa(e_), pb(e_);
    to_digits(a, p_, e_, pa.data());
    to_digits(b, p_, e_, pb.data());
    normalize(pa);
    normalize(pb);
    Poly pr = poly_mod(poly_mul(pa, pb, p_), modulus_, p_);
    std::uint32_t r = 0, scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        if (i < pr.size()) r += pr[i] * scale;
        scale *= p_;
    }
    return r;
}

std::uint32_t Field::inv(std::uint32_t a) const {
    if (a == 0) throw DivisionByZero("inverse of the zero element");
    if (a == 1) return 1;
    if (e_ == 1) return mod_inv_prime(a, p_);
    if (tables_) return exp_[(q_ - 1) - log_[a]];
    return inv_slow(a);
}

std::uint32_t Field::inv_slow(std::uint32_t a) const {
    Poly pa(e_);
    to_digits(a, p_, e_, pa.data());
    normalize(pa);
    const Poly u = poly_inv_mod(pa, modulus_, p_);
    std::uint32_t r = 0, scale = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        if (i < u.size()) r += u[i] * scale;
        scale *= p_;
    }
    return r;
}

std::uint32_t Field::div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t n) const {
    if (n == 0) return 1;
    if (a == 0) return 0;
    if (tables_) {
        const std::uint64_t l = static_cast<std::uint64_t>(log_[a]) * (n % (q_ - 1)) % (q_ - 1);
        return exp_[l];
    }
    std::uint32_t base = a, r = 1;
    while (n > 0) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

std::uint32_t Field::find_primitive() const {
    // only reached on the non-table paths (e = 1, or q above the cutoff),
    // where pow() never consults the tables
    if (q_ == 2) return 1;
    const auto factors = prime_factors(q_ - 1);
    for (std::uint32_t g = 1; g < q_; ++g) {
        bool full = true;
        for (std::uint64_t r : factors)
            if (pow(g, (q_ - 1) / r) == 1) {
                full = false;
                break;
            }
        if (full) return g;
    }
    return 0; // unreachable: F_q* is cyclic
}

void Field::build_tables() {
    // antilog/log with respect to the smallest-index generator; the generator
    // search below uses the slow path because the tables do not exist yet
    const auto factors = prime_factors(q_ - 1);
    std::uint32_t g = 0;
    for (std::uint32_t cand = 1; cand < q_ && g == 0; ++cand) {
        bool full = true;
        for (std::uint64_t r : factors) {
            std::uint64_t n = (q_ - 1) / r;
            std::uint32_t base = cand, t = 1;
            while (n > 0) {
                if (n & 1) t = mul_slow(t, base);
                base = mul_slow(base, base);
                n >>= 1;
            }
            if (t == 1) {
                full = false;
                break;
            }
        }
        if (full) g = cand;
    }
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    std::uint32_t acc = 1;
    for (std::uint32_t i = 0; i + 1 < q_; ++i) {
        exp_[i] = acc;
        log_[acc] = i;
        acc = mul_slow(acc, g);
    }
    tables_ = true;
    primitive_ = g; // the search above walks indices in ascending order
}

bool Field::is_nonzero_square(std::uint32_t v) const {
    if (v == 0) return false;
    if (p_ == 2) return true; // squaring is a bijection in characteristic 2
    return pow(v, (q_ - 1) / 2) == 1;
}

std::vector<FieldElement> Field::elements(bool nonzero_only) const {
    std::vector<FieldElement> out;
    out.reserve(q_ - (nonzero_only ? 1 : 0));
    for (std::uint32_t i = nonzero_only ? 1 : 0; i < q_; ++i) out.emplace_back(*this, i);
    return out;
}

FieldElement Field::element(std::uint32_t index) const {
    if (index >= q_)
        throw SchemaError("element index " + std::to_string(index) + " out of range [0, " +
                          std::to_string(q_) + ")");
    return {*this, index};
}

FieldElement Field::zero() const { return {*this, 0}; }
FieldElement Field::one() const { return {*this, 1}; }
FieldElement Field::primitive_element() const { return {*this, primitive_}; }

const Field* FieldElement::same_field(const FieldElement& o) const {
    if (f_ == nullptr || o.f_ == nullptr) throw FieldMismatch("element without a field");
    if (f_ != o.f_ && !(*f_ == *o.f_))
        throw FieldMismatch("operands belong to different fields");
    return f_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    const Field* f = same_field(o);
    return {*f, f->add(idx_, o.idx_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
    const Field* f = same_field(o);
    return {*f, f->sub(idx_, o.idx_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
    const Field* f = same_field(o);
    return {*f, f->mul(idx_, o.idx_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
    const Field* f = same_field(o);
    return {*f, f->div(idx_, o.idx_)};
}
FieldElement FieldElement::operator-() const { return {*f_, f_->neg(idx_)}; }
FieldElement FieldElement::inverse() const { return {*f_, f_->inv(idx_)}; }
FieldElement FieldElement::pow(std::uint64_t n) const { return {*f_, f_->pow(idx_, n)}; }

std::uint64_t multiplicative_order(const Field& f, std::uint32_t a) {
    if (a == 0) throw DivisionByZero("order of the zero element");
    std::uint64_t ord = 1;
    std::uint32_t acc = a;
    while (acc != 1) {
        acc = f.mul(acc, a);
        ++ord;
    }
    return ord;
}

} // namespace mlcount
