// spherecc error type
// One exception class carrying a machine-readable kind.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spherecc {

enum class ErrorKind {
    DegenerateGeodesic,
    DegenerateSide,
    DegenerateTriangle,
    NumericalDomain,
    InvalidArgument,
    OffTrack,
    InvalidIndex,
    OutOfExtent,
    DivisionDegenerate,
    InsideRegion,
    EmptyRange,
    NoTangency,
    EmptyCone,
    DegenerateVelocity,
    CoincidentCircles,
    EmptyWindow,
    NoPoleEvent,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DegenerateGeodesic: return "DegenerateGeodesic";
    case ErrorKind::DegenerateSide: return "DegenerateSide";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::NumericalDomain: return "NumericalDomain";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::OffTrack: return "OffTrack";
    case ErrorKind::InvalidIndex: return "InvalidIndex";
    case ErrorKind::OutOfExtent: return "OutOfExtent";
    case ErrorKind::DivisionDegenerate: return "DivisionDegenerate";
    case ErrorKind::InsideRegion: return "InsideRegion";
    case ErrorKind::EmptyRange: return "EmptyRange";
    case ErrorKind::NoTangency: return "NoTangency";
    case ErrorKind::EmptyCone: return "EmptyCone";
    case ErrorKind::DegenerateVelocity: return "DegenerateVelocity";
    case ErrorKind::CoincidentCircles: return "CoincidentCircles";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::NoPoleEvent: return "NoPoleEvent";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace spherecc
