// Copyright 2026 The gbsample Authors
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

#include "gbs/error.hpp"

namespace gbs {

const char *to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Validation:
            return "ValidationError";
        case ErrorKind::Dimension:
            return "DimensionError";
        case ErrorKind::NotSymmetric:
            return "NotSymmetric";
        case ErrorKind::NotPerfect:
            return "NotPerfect";
        case ErrorKind::NotBipartite:
            return "NotBipartite";
        case ErrorKind::SizeLimit:
            return "SizeLimit";
        case ErrorKind::NoPerfectMatching:
            return "NoPerfectMatching";
        case ErrorKind::ZeroNormalizer:
            return "ZeroNormalizer";
        case ErrorKind::RetryBudgetExceeded:
            return "RetryBudgetExceeded";
        case ErrorKind::RejectionBudgetExceeded:
            return "RejectionBudgetExceeded";
        case ErrorKind::AnnealDiverged:
            return "AnnealDiverged";
        case ErrorKind::Io:
            return "IoError";
    }
    return "Unknown";
}

bool is_budget_error(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SizeLimit:
        case ErrorKind::RetryBudgetExceeded:
        case ErrorKind::RejectionBudgetExceeded:
        case ErrorKind::AnnealDiverged:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {
}

void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

}  // namespace gbs
