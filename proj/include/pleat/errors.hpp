#pragma once

#include <stdexcept>
#include <string>

namespace pleat {

enum class ErrorKind {
    DegenerateMap,
    IdentityMap,
    DegenerateLength,
    DegenerateConfiguration,
    InvalidDecomposition,
    InvalidArc,
    UnknownLetter,
    RelatorViolated,
    ReducibleRepresentation,
    NonHyperbolicParameters,
    NotAdapted,
    DegenerateTriangle,
    AngleUnwrapFailure,
    OrientationTrackingFailure,
    EndpointsMismatch,
    InvalidInput,
    ParseError,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace pleat
