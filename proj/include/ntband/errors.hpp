#pragma once

#include <stdexcept>

namespace ntband {

// Error taxonomy shared across the library. The CLI maps these onto its
// documented exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct InvalidCorrelation : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct NonPositiveWealth : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct SingularCurvature : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };

} // namespace ntband
