// Copyright 2026 The hgpointer Authors
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

#include "hgp/error.h"

namespace hgp {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument:
            return "invalid-argument";
        case ErrorCode::kUnsupportedOrder:
            return "unsupported-order";
        case ErrorCode::kNoCarrier:
            return "no-carrier";
        case ErrorCode::kDegeneratePostSelection:
            return "degenerate-post-selection";
        case ErrorCode::kWeakRegime:
            return "weak-regime";
        case ErrorCode::kTotalExtinction:
            return "total-extinction";
        case ErrorCode::kStepSize:
            return "step-size";
        case ErrorCode::kNoSensitivity:
            return "no-sensitivity";
        case ErrorCode::kInvalidState:
            return "invalid-state";
        case ErrorCode::kInvalidPovm:
            return "invalid-povm";
        case ErrorCode::kCoverage:
            return "coverage";
        case ErrorCode::kGridMismatch:
            return "grid-mismatch";
        case ErrorCode::kUnreachableAmplitude:
            return "unreachable-amplitude";
        case ErrorCode::kSeparation:
            return "separation";
        case ErrorCode::kExpansionInvalid:
            return "expansion-invalid";
        case ErrorCode::kConfig:
            return "config";
        case ErrorCode::kIo:
            return "io";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

}  // namespace hgp
