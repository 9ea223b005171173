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

#include "nutrivision/error.h"

namespace nutrivision {

std::string_view ErrorToken(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchemaError: return "SCHEMA_ERROR";
    case ErrorCode::kImageDecodeError: return "IMAGE_DECODE_ERROR";
    case ErrorCode::kDuplicateLabel: return "DUPLICATE_LABEL";
    case ErrorCode::kUnknownFoodClass: return "UNKNOWN_FOOD_CLASS";
    case ErrorCode::kNoReferenceFound: return "NO_REFERENCE_FOUND";
    case ErrorCode::kAmbiguousReference: return "AMBIGUOUS_REFERENCE";
    case ErrorCode::kEmptyCorpus: return "EMPTY_CORPUS";
    case ErrorCode::kEmptyRatings: return "EMPTY_RATINGS";
    case ErrorCode::kInvalidAnthropometrics: return "INVALID_ANTHROPOMETRICS";
    case ErrorCode::kInvalidRating: return "INVALID_RATING";
    case ErrorCode::kNoEligibleRecipes: return "NO_ELIGIBLE_RECIPES";
    case ErrorCode::kUnknownUser: return "UNKNOWN_USER";
    case ErrorCode::kUnknownRecipe: return "UNKNOWN_RECIPE";
    case ErrorCode::kStorageFull: return "STORAGE_FULL";
    case ErrorCode::kCorruptLog: return "CORRUPT_LOG";
    case ErrorCode::kIoError: return "IO_ERROR";
  }
  return "INTERNAL";
}

std::string_view ErrorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kImageDecodeError: return "ImageDecodeError";
    case ErrorCode::kDuplicateLabel: return "DuplicateLabel";
    case ErrorCode::kUnknownFoodClass: return "UnknownFoodClass";
    case ErrorCode::kNoReferenceFound: return "NoReferenceFound";
    case ErrorCode::kAmbiguousReference: return "AmbiguousReference";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kEmptyRatings: return "EmptyRatings";
    case ErrorCode::kInvalidAnthropometrics: return "InvalidAnthropometrics";
    case ErrorCode::kInvalidRating: return "InvalidRating";
    case ErrorCode::kNoEligibleRecipes: return "NoEligibleRecipes";
    case ErrorCode::kUnknownUser: return "UnknownUser";
    case ErrorCode::kUnknownRecipe: return "UnknownRecipe";
    case ErrorCode::kStorageFull: return "StorageFull";
    case ErrorCode::kCorruptLog: return "CorruptLog";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Internal";
}

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchemaError:
    case ErrorCode::kImageDecodeError:
    case ErrorCode::kDuplicateLabel:
    case ErrorCode::kInvalidAnthropometrics:
    case ErrorCode::kInvalidRating:
    case ErrorCode::kEmptyCorpus:
      return 400;
    case ErrorCode::kUnknownUser:
    case ErrorCode::kUnknownRecipe:
    case ErrorCode::kUnknownFoodClass:
      return 404;
    case ErrorCode::kNoReferenceFound:
    case ErrorCode::kAmbiguousReference:
    case ErrorCode::kNoEligibleRecipes:
    case ErrorCode::kEmptyRatings:
      return 422;
    case ErrorCode::kStorageFull:
      return 507;
    case ErrorCode::kCorruptLog:
    case ErrorCode::kIoError:
      return 500;
  }
  return 500;
}

}  // namespace nutrivision
