// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace texweave {

enum class ErrorCode {
    Io,
    Parse,
    MissingUv,
    EmptyMesh,
    ResolutionTooSmall,
    MismatchedResolutions,
    Domain,
    NoNeighbors,
    NoPaintedSeed,
    UnpaintedPoints,
    NoNonSeamPoints,
    UpscalerMismatch,
    UnknownField,
    InvalidArgument,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

}  // namespace texweave
