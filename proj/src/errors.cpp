#include "heislink/errors.hpp"

namespace heislink {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonReal: return "NonReal";
        case ErrorKind::DegenerateCurve: return "DegenerateCurve";
        case ErrorKind::AreaNotZero: return "AreaNotZero";
        case ErrorKind::CrossingDegenerate: return "CrossingDegenerate";
        case ErrorKind::MorseFail: return "MorseFail";
        case ErrorKind::NonPositiveT: return "NonPositiveT";
        case ErrorKind::NonPositiveLambda: return "NonPositiveLambda";
        case ErrorKind::CurvatureVanishes: return "CurvatureVanishes";
        case ErrorKind::TriplePoint: return "TriplePoint";
        case ErrorKind::TangentialCrossing: return "TangentialCrossing";
        case ErrorKind::NotNearInteger: return "NotNearInteger";
        case ErrorKind::DegenerateTangency: return "DegenerateTangency";
        case ErrorKind::ProjectionDegenerate: return "ProjectionDegenerate";
        case ErrorKind::OriginInput: return "OriginInput";
        case ErrorKind::NonPositiveZ: return "NonPositiveZ";
        case ErrorKind::CoincidentPoints: return "CoincidentPoints";
        case ErrorKind::UnresolvedPeak: return "UnresolvedPeak";
        case ErrorKind::BallTooLarge: return "BallTooLarge";
        case ErrorKind::StripHitsCrossing: return "StripHitsCrossing";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace heislink
