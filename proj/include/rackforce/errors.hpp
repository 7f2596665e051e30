#pragma once

#include <stdexcept>

namespace rackforce {

/// Malformed input data or parameters (empty traces, non-physical values, bad files).
struct InvalidInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Traces fed to one computation disagree on rate, length, or start time.
struct AlignmentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Forward speed below the minimum the slip kinematics are valid for.
struct SpeedTooLowError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Slip angle outside the domain of a tire kernel (tan singularity).
struct InvalidSlipError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Normalization is undefined because the reference trace has zero range.
struct DegenerateReferenceError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Non-finite value produced while integrating.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rackforce
