// Copyright 2026 The PP-ADRC Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPADRC_BASE_ERRORS_H_
#define PPADRC_BASE_ERRORS_H_

#include "absl/status/status.h"
#include "absl/strings/string_view.h"

namespace ppadrc {

// Named failure kinds used across modules. Each maps onto an absl status
// code and carries a stable message prefix so callers (and the CLI exit-code
// mapping) can tell them apart.
absl::Status SearchExhaustedError(absl::string_view message);
absl::Status InfeasiblePolicyError(absl::string_view message);
absl::Status DomainError(absl::string_view message);
absl::Status InsufficientPointsError(absl::string_view message);

bool IsSearchExhausted(const absl::Status& status);
bool IsInfeasiblePolicy(const absl::Status& status);
bool IsDomainError(const absl::Status& status);

}  // namespace ppadrc

#endif  // PPADRC_BASE_ERRORS_H_
