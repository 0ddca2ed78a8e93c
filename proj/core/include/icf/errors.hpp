#pragma once

#include <stdexcept>
#include <string>

namespace icf {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Discrete speed dropped below the immersion threshold.
struct NotImmersed : Error {
    using Error::Error;
};

/// A sample coordinate is NaN or infinite.
struct NonFinite : Error {
    using Error::Error;
};

/// Total curvature is not close enough to an integer multiple of 2*pi.
struct AmbiguousWinding : Error {
    using Error::Error;
};

struct UnknownPreset : Error {
    using Error::Error;
};

struct BadParams : Error {
    using Error::Error;
};

/// Requested spectral truncation exceeds what the sampling supports.
struct TruncationTooHigh : Error {
    using Error::Error;
};

/// Operation requires winding >= 1.
struct BadWinding : Error {
    using Error::Error;
};

/// Step controller hit dt_min without an accepted step.
struct StepFloorReached : Error {
    using Error::Error;
};

/// The evolving (or perturbed) curve stopped being immersed.
struct ImmersionLost : Error {
    using Error::Error;
};

struct CorruptCheckpoint : Error {
    using Error::Error;
};

/// ||K||_2 is at the stationarity floor; a ratio against it is meaningless.
struct DegenerateDenominator : Error {
    using Error::Error;
};

/// Circle fit attempted on (near-)collinear points.
struct DegenerateFit : Error {
    using Error::Error;
};

struct InsufficientData : Error {
    using Error::Error;
};

struct NonPositiveEnergy : Error {
    using Error::Error;
};

} // namespace icf
