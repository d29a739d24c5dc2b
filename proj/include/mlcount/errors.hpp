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

#ifndef MLCOUNT_ERRORS_HPP_
#define MLCOUNT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace mlcount {

// Every failure carries a stable machine-readable code; the CLI maps the
// codes to exit statuses.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

  private:
    std::string code_;
};

#define MLCOUNT_DEFINE_ERROR(NAME, CODE)                                       \
    class NAME : public Error {                                                \
      public:                                                                  \
        explicit NAME(const std::string& message) : Error(CODE, message) {}    \
    }

// validation (CLI exit 2)
MLCOUNT_DEFINE_ERROR(SchemaError, "schema");
MLCOUNT_DEFINE_ERROR(PartitionError, "partition");
MLCOUNT_DEFINE_ERROR(DimensionError, "dimension");
MLCOUNT_DEFINE_ERROR(NotPrime, "not-prime");
MLCOUNT_DEFINE_ERROR(ReducibleModulus, "reducible-modulus");
MLCOUNT_DEFINE_ERROR(FieldTooLarge, "field-too-large");

// rank/shape (CLI exit 3)
MLCOUNT_DEFINE_ERROR(RankError, "rank");
MLCOUNT_DEFINE_ERROR(ShapeMismatch, "shape");
MLCOUNT_DEFINE_ERROR(SingularMatrix, "singular");
MLCOUNT_DEFINE_ERROR(ZeroTarget, "zero-target");
MLCOUNT_DEFINE_ERROR(FieldMismatch, "field-mismatch");
MLCOUNT_DEFINE_ERROR(DivisionByZero, "division-by-zero");

// resource guards
MLCOUNT_DEFINE_ERROR(OracleTooLarge, "oracle-too-large");     // CLI exit 4
MLCOUNT_DEFINE_ERROR(HierarchyTooLarge, "hierarchy-too-large"); // CLI exit 5
MLCOUNT_DEFINE_ERROR(CountMismatch, "count-mismatch");          // CLI exit 6

#undef MLCOUNT_DEFINE_ERROR

// Exit status used by the CLI for a failure code.
int exit_status_for(const std::string& code) noexcept;

} // namespace mlcount

#endif // MLCOUNT_ERRORS_HPP_
