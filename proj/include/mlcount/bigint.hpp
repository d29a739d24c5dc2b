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

#ifndef MLCOUNT_BIGINT_HPP_
#define MLCOUNT_BIGINT_HPP_

#include <cstdint>
#include <gmpxx.h>
#include <string>

namespace mlcount {

// All counts are exact; intermediate inclusion-exclusion sums are signed.
using BigInt = mpz_class;

inline BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline BigInt big_pow(const BigInt& base, std::uint64_t exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline std::string to_decimal(const BigInt& v) { return v.get_str(); }

} // namespace mlcount

#endif // MLCOUNT_BIGINT_HPP_
