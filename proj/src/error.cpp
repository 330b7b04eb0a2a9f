// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/error.hpp"

namespace texweave {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Io: return "Io";
        case ErrorCode::Parse: return "Parse";
        case ErrorCode::MissingUv: return "MissingUv";
        case ErrorCode::EmptyMesh: return "EmptyMesh";
        case ErrorCode::ResolutionTooSmall: return "ResolutionTooSmall";
        case ErrorCode::MismatchedResolutions: return "MismatchedResolutions";
        case ErrorCode::Domain: return "Domain";
        case ErrorCode::NoNeighbors: return "NoNeighbors";
        case ErrorCode::NoPaintedSeed: return "NoPaintedSeed";
        case ErrorCode::UnpaintedPoints: return "UnpaintedPoints";
        case ErrorCode::NoNonSeamPoints: return "NoNonSeamPoints";
        case ErrorCode::UpscalerMismatch: return "UpscalerMismatch";
        case ErrorCode::UnknownField: return "UnknownField";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace texweave
