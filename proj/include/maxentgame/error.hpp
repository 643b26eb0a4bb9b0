// Copyright 2026 The maxentgame Authors.
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace maxentgame {

enum class ErrorKind {
    InvalidArgument,
    ShapeMismatch,
    CapExceeded,
    DegenerateTarget,
    NotMarkovian,
    ZeroAdversaryMass,
    UnboundedRatio,
    NonConvergence,
    NonPositiveReference,
};

inline std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// Configuration-type errors (bad shapes, bad arguments) as opposed to numerical ones.
    bool is_usage_error() const noexcept {
        return kind_ == ErrorKind::InvalidArgument || kind_ == ErrorKind::ShapeMismatch;
    }

private:
    ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& what) {
    if (!condition) throw Error(kind, what);
}

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::DegenerateTarget: return "DegenerateTarget";
    case ErrorKind::NotMarkovian: return "NotMarkovian";
    case ErrorKind::ZeroAdversaryMass: return "ZeroAdversaryMass";
    case ErrorKind::UnboundedRatio: return "UnboundedRatio";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NonPositiveReference: return "NonPositiveReference";
    }
    return "Unknown";
}

} // namespace maxentgame
