// Copyright 2026 The fesopt Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fesopt {

enum class ErrorCode {
    NonFiniteEntry,
    ZeroMatrix,
    InvalidElement,
    OddQ,
    QOutOfRange,
    NTooLarge,
    NotFES,
    AllZero,
    DimensionMismatch,
    TOutOfRange,
    DegenerateOutcome,
    PoleAtT,
    PoleAtComposition,
    InvalidSpec,
    UnknownPanel,
    EmptyTable,
    IoError,
    ParseError,
};

inline constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
        case ErrorCode::ZeroMatrix: return "ZeroMatrix";
        case ErrorCode::InvalidElement: return "InvalidElement";
        case ErrorCode::OddQ: return "OddQ";
        case ErrorCode::QOutOfRange: return "QOutOfRange";
        case ErrorCode::NTooLarge: return "NTooLarge";
        case ErrorCode::NotFES: return "NotFES";
        case ErrorCode::AllZero: return "AllZero";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::TOutOfRange: return "TOutOfRange";
        case ErrorCode::DegenerateOutcome: return "DegenerateOutcome";
        case ErrorCode::PoleAtT: return "PoleAtT";
        case ErrorCode::PoleAtComposition: return "PoleAtComposition";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::UnknownPanel: return "UnknownPanel";
        case ErrorCode::EmptyTable: return "EmptyTable";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace fesopt
