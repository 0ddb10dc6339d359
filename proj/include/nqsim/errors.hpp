#pragma once

#include <stdexcept>
#include <string>

namespace nqsim {

/// Base class for all library errors.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A rate, horizon, or threshold outside its admissible range.
struct InvalidParameterError : SimError {
    using SimError::SimError;
};

/// An event referenced a job the system has never seen.
struct CorruptedTraceError : SimError {
    using SimError::SimError;
};

/// An event kind the discipline cannot produce (e.g. a threshold expiry
/// delivered to the zero-threshold FCFS variant).
struct InvalidEventError : SimError {
    using SimError::SimError;
};

/// A checker was fed a trace of the wrong pair kind.
struct InvalidTraceError : SimError {
    using SimError::SimError;
};

/// A sweep grid point sits exactly on a stability boundary line.
struct BoundaryPointError : SimError {
    using SimError::SimError;
};

/// Not enough post-warm-up samples to form the requested statistic.
struct InsufficientDataError : SimError {
    using SimError::SimError;
};

/// Stationary statistics requested for parameters outside the stability
/// region.
struct UnstableParametersError : SimError {
    using SimError::SimError;
};

/// Malformed scenario file or command line.
struct UsageError : SimError {
    using SimError::SimError;
};

/// A file could not be opened, read, or written.
struct IoError : SimError {
    using SimError::SimError;
};

}  // namespace nqsim
