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

#include "hhminer/error.hpp"

namespace hhminer {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kMalformedHand: return "MalformedHand";
    case ErrorCode::kUnsupportedVariant: return "UnsupportedVariant";
    case ErrorCode::kInconsistentHand: return "InconsistentHand";
    case ErrorCode::kIllegalAction: return "IllegalAction";
    case ErrorCode::kUnknownActor: return "UnknownActor";
    case ErrorCode::kDuplicateCard: return "DuplicateCard";
    case ErrorCode::kWrongCardCount: return "WrongCardCount";
    case ErrorCode::kPreFlopBoard: return "PreFlopBoard";
    case ErrorCode::kWrongBoardSize: return "WrongBoardSize";
    case ErrorCode::kOutOfRangeInput: return "OutOfRangeInput";
    case ErrorCode::kMissingHoleCards: return "MissingHoleCards";
    case ErrorCode::kFoldNotAllowed: return "FoldNotAllowed";
    case ErrorCode::kAllAttributesRemoved: return "AllAttributesRemoved";
    case ErrorCode::kArffSyntaxError: return "ArffSyntaxError";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kDegenerateFit: return "DegenerateFit";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kTooFewProfiles: return "TooFewProfiles";
    case ErrorCode::kProfileIncomplete: return "ProfileIncomplete";
    case ErrorCode::kModelMismatch: return "ModelMismatch";
    case ErrorCode::kMissingUpstream: return "MissingUpstream";
  }
  return "Unknown";
}

std::string_view illegal_reason_name(IllegalReason reason) {
  switch (reason) {
    case IllegalReason::kActorFolded: return "ActorFolded";
    case IllegalReason::kActorAllIn: return "ActorAllIn";
    case IllegalReason::kExceedsStack: return "ExceedsStack";
    case IllegalReason::kCheckFacingBet: return "CheckFacingBet";
    case IllegalReason::kCallAmountMismatch: return "CallAmountMismatch";
    case IllegalReason::kBetFacingBet: return "BetFacingBet";
    case IllegalReason::kRaiseNotAbove: return "RaiseNotAbove";
    case IllegalReason::kRaiseTotalMismatch: return "RaiseTotalMismatch";
    case IllegalReason::kAllInNotWholeStack: return "AllInNotWholeStack";
    case IllegalReason::kZeroWager: return "ZeroWager";
    case IllegalReason::kWagerOnFold: return "WagerOnFold";
  }
  return "Unknown";
}

}  // namespace hhminer
