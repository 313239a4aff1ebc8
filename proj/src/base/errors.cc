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

#include "ppadrc/base/errors.h"

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"

namespace ppadrc {
namespace {

constexpr absl::string_view kSearchExhausted = "SearchExhausted: ";
constexpr absl::string_view kInfeasiblePolicy = "InfeasiblePolicy: ";
constexpr absl::string_view kDomainError = "DomainError: ";
constexpr absl::string_view kInsufficientPoints = "InsufficientPoints: ";

}  // namespace

absl::Status SearchExhaustedError(absl::string_view message) {
  return absl::ResourceExhaustedError(absl::StrCat(kSearchExhausted, message));
}

absl::Status InfeasiblePolicyError(absl::string_view message) {
  return absl::FailedPreconditionError(
      absl::StrCat(kInfeasiblePolicy, message));
}

absl::Status DomainError(absl::string_view message) {
  return absl::OutOfRangeError(absl::StrCat(kDomainError, message));
}

absl::Status InsufficientPointsError(absl::string_view message) {
  return absl::InvalidArgumentError(
      absl::StrCat(kInsufficientPoints, message));
}

bool IsSearchExhausted(const absl::Status& status) {
  return status.code() == absl::StatusCode::kResourceExhausted &&
         absl::StartsWith(status.message(), kSearchExhausted);
}

bool IsInfeasiblePolicy(const absl::Status& status) {
  return status.code() == absl::StatusCode::kFailedPrecondition &&
         absl::StartsWith(status.message(), kInfeasiblePolicy);
}

bool IsDomainError(const absl::Status& status) {
  return status.code() == absl::StatusCode::kOutOfRange &&
         absl::StartsWith(status.message(), kDomainError);
}

}  // namespace ppadrc
