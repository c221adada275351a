#pragma once

#include <stdexcept>
#include <string>

namespace kch {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RankMismatch : Error {
    using Error::Error;
};
struct TermBudgetExceeded : Error {
    using Error::Error;
};
struct MissingImage : Error {
    using Error::Error;
};
struct InvalidBraid : Error {
    using Error::Error;
};
struct MultiComponentClosure : Error {
    using Error::Error;
};
/// A monomial produced by the extended braid action does not have the
/// one-extending-letter shape required for coefficient extraction.
/// Signals an implementation bug, never valid input.
struct ExtractionShapeError : Error {
    using Error::Error;
};
struct InvalidParams : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct NonFiniteValue : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct SingularImage : Error {
    using Error::Error;
};
struct NotARepresentation : Error {
    using Error::Error;
};
struct AbelianDegenerate : Error {
    using Error::Error;
};
struct RootSelectionFailure : Error {
    using Error::Error;
};
struct EigenvalueCollision : Error {
    using Error::Error;
};
struct NoRoot : Error {
    using Error::Error;
};
struct RNotZero : Error {
    using Error::Error;
};
struct AlreadyIrreducible : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

} // namespace kch
