#ifndef ELASTODIPOLE_ERRORS_HPP
#define ELASTODIPOLE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace edp {

// Base class for all library errors; derived types distinguish the failure
// domain so that callers (and the C API) can map them to error codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

// materials
struct ConvexityViolation : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct NonPositiveDensity : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

// kernels
struct SingularPoint : Error {
    using Error::Error;
};

// geometry
struct ParseError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};
struct NonWatertight : Error {
    using Error::Error;
};
struct DegenerateFace : Error {
    using Error::Error;
};
struct OnSurface : Error {
    using Error::Error;
};
struct EmptyInterior : Error {
    using Error::Error;
};

// bem / resonance
struct QuadratureFailure : Error {
    using Error::Error;
};
struct NullSpaceDimensionMismatch : Error {
    using Error::Error;
};
struct NonPositiveEigenvalue : Error {
    using Error::Error;
};
struct NearSingularSystem : Error {
    using Error::Error;
};

// sphere oracle
struct DomainError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct RootNotBracketed : Error {
    using Error::Error;
};

} // namespace edp

#endif
