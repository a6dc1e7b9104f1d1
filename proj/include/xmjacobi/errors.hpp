#pragma once

#include <stdexcept>
#include <string>

namespace xmjacobi {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A gamma-function argument landed on (or within tolerance of) a pole.
struct PoleError : Error { using Error::Error; };

/// A ratio of gamma functions diverges (unmatched pole in a numerator).
struct InfinityError : Error { using Error::Error; };

/// A series failed to reach the requested tolerance within max_terms.
struct ConvergenceError : Error { using Error::Error; };

/// Parameters outside the domain of an operation.
struct ParameterError : Error { using Error::Error; };

/// The two-term connection formula degenerates (a - b too close to an integer).
struct DegenerateError : Error { using Error::Error; };

/// Argument outside the physical domain (for example r <= 0).
struct DomainError : Error { using Error::Error; };

/// A denominator polynomial vanished where it must not; fatal diagnostic.
struct DenominatorZeroError : Error { using Error::Error; };

/// A coefficient denominator in the polynomial composition vanished.
struct CoefficientSingularityError : Error { using Error::Error; };

/// Both the recurrence and the explicit-sum construction are singular.
struct DegenerateRecurrenceError : Error { using Error::Error; };

/// |S| deviates from 1 beyond tolerance where unitarity is required.
struct NonUnitaryError : Error { using Error::Error; };

/// The m-dependent S-matrix bracket vanished at a sampled wavenumber.
struct BracketZeroError : Error { using Error::Error; };

/// Phase extraction attempted at an ill-conditioned point pair.
struct IllConditionedError : Error { using Error::Error; };

/// Integration overflowed despite renormalization; indicates a setup bug.
struct OverflowError : Error { using Error::Error; };

}  // namespace xmjacobi
