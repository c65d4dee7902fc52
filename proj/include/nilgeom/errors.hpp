#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nilgeom {

enum class ErrorCode {
    ZeroLength,
    NotUnit,
    NotOnCurve,
    DegeneratePoints,
    AtVertex,
    NoConvergence,
    EmptyMesh,
    NoIntersection,
    IdenticalCurves,
    DegenerateInput,
    NotOnSide,
    DegenerateLambda,
    NotPerspective,
    MissingIntersection,
    DegenerateHexagon,
    ParallelSideLine,
    DegenerateConfig,
    InvalidArgument,
    ParseError,
    UnknownReference,
    DuplicateName,
    UnsupportedTarget,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code identifies the failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace nilgeom
