/* Copyright 2026 The NutriVision Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef NUTRIVISION_ERROR_H_
#define NUTRIVISION_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace nutrivision {

// Every failure the library can report. Each maps to exactly one API token
// and HTTP status (see ErrorToken / HttpStatusFor).
enum class ErrorCode {
  kSchemaError,
  kImageDecodeError,
  kDuplicateLabel,
  kUnknownFoodClass,
  kNoReferenceFound,
  kAmbiguousReference,
  kEmptyCorpus,
  kEmptyRatings,
  kInvalidAnthropometrics,
  kInvalidRating,
  kNoEligibleRecipes,
  kUnknownUser,
  kUnknownRecipe,
  kStorageFull,
  kCorruptLog,
  kIoError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Machine token, e.g. "NO_REFERENCE_FOUND".
std::string_view ErrorToken(ErrorCode code);

// CamelCase name used in human-facing diagnostics, e.g. "UnknownFoodClass".
std::string_view ErrorName(ErrorCode code);

int HttpStatusFor(ErrorCode code);

}  // namespace nutrivision

#endif  // NUTRIVISION_ERROR_H_
