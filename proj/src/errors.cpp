#include "nilgeom/errors.hpp"

namespace nilgeom {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::ZeroLength: return "ZeroLength";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::DegeneratePoints: return "DegeneratePoints";
    case ErrorCode::AtVertex: return "AtVertex";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::EmptyMesh: return "EmptyMesh";
    case ErrorCode::NoIntersection: return "NoIntersection";
    case ErrorCode::IdenticalCurves: return "IdenticalCurves";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NotOnSide: return "NotOnSide";
    case ErrorCode::DegenerateLambda: return "DegenerateLambda";
    case ErrorCode::NotPerspective: return "NotPerspective";
    case ErrorCode::MissingIntersection: return "MissingIntersection";
    case ErrorCode::DegenerateHexagon: return "DegenerateHexagon";
    case ErrorCode::ParallelSideLine: return "ParallelSideLine";
    case ErrorCode::DegenerateConfig: return "DegenerateConfig";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownReference: return "UnknownReference";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnsupportedTarget: return "UnsupportedTarget";
    }
    return "Unknown";
}

} // namespace nilgeom
