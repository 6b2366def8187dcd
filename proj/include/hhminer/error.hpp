// Copyright 2026 The hhminer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HHMINER_ERROR_HPP_
#define HHMINER_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hhminer {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kInvalidConfig,
  // Hand-history parsing and replay.
  kMalformedHand,
  kUnsupportedVariant,
  kInconsistentHand,
  kIllegalAction,
  kUnknownActor,
  // Cards and equity.
  kDuplicateCard,
  kWrongCardCount,
  kPreFlopBoard,
  kWrongBoardSize,
  kOutOfRangeInput,
  // Features and datasets.
  kMissingHoleCards,
  kFoldNotAllowed,
  kAllAttributesRemoved,
  kArffSyntaxError,
  // Clustering.
  kEmptyDataset,
  kDegenerateFit,
  kSchemaMismatch,
  // Profiles and strategy models.
  kTooFewProfiles,
  kProfileIncomplete,
  kModelMismatch,
  // Pipeline.
  kMissingUpstream,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the hand and ARFF parsers; `line` is 1-based within the hand
// block or file.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class IllegalReason {
  kActorFolded,
  kActorAllIn,
  kExceedsStack,
  kCheckFacingBet,
  kCallAmountMismatch,
  kBetFacingBet,
  kRaiseNotAbove,
  kRaiseTotalMismatch,
  kAllInNotWholeStack,
  kZeroWager,
  kWagerOnFold,
};

std::string_view illegal_reason_name(IllegalReason reason);

class IllegalActionError : public Error {
 public:
  IllegalActionError(IllegalReason reason, const std::string& message)
      : Error(ErrorCode::kIllegalAction,
              std::string(illegal_reason_name(reason)) + ": " + message),
        reason_(reason) {}

  IllegalReason reason() const noexcept { return reason_; }

 private:
  IllegalReason reason_;
};

}  // namespace hhminer

#endif  // HHMINER_ERROR_HPP_
