// Copyright 2026 The smearlab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "smearlab/error.hpp"

namespace smearlab {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument:
        return "invalid_argument";
    case ErrorCode::DimensionMismatch:
        return "dimension_mismatch";
    case ErrorCode::GridIncompatible:
        return "grid_incompatible";
    case ErrorCode::GridOverflow:
        return "grid_overflow";
    case ErrorCode::NonFinite:
        return "non_finite";
    case ErrorCode::Nonconverged:
        return "nonconverged_moment";
    case ErrorCode::NumericalFailure:
        return "numerical_failure";
    case ErrorCode::Io:
        return "io";
    case ErrorCode::Parse:
        return "parse";
    }
    return "unknown";
}

} // namespace smearlab
