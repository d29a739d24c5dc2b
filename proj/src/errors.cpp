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

#include "mlcount/errors.hpp"

namespace mlcount {

int exit_status_for(const std::string& code) noexcept {
    if (code == "schema" || code == "partition" || code == "dimension" ||
        code == "not-prime" || code == "reducible-modulus" || code == "field-too-large")
        return 2;
    if (code == "rank" || code == "shape" || code == "singular" || code == "zero-target" ||
        code == "field-mismatch" || code == "division-by-zero")
        return 3;
    if (code == "oracle-too-large") return 4;
    if (code == "hierarchy-too-large") return 5;
    if (code == "count-mismatch") return 6;
    return 1;
}

} // namespace mlcount
