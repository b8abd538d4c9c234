#pragma once

#include <stdexcept>

namespace tidalsim {

/// File-system or stream failure. The CLI maps this to exit code 1; every
/// other exception maps to exit code 2 (validation).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The integrator produced a non-finite state (unstable step size or wildly
/// out-of-range parameters).
struct IntegrationDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A model fit could not be carried out on the given data.
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tidalsim
