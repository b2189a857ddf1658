#pragma once

#include <stdexcept>
#include <string>

namespace tbands {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// construction / input validation
struct BadLength : Error { using Error::Error; };
struct DegenerateCoupling : Error { using Error::Error; };
struct BadDefectSite : Error { using Error::Error; };
struct EtaOutOfRange : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };

// numerical kernels
struct NoConvergence : Error { using Error::Error; };
struct Overflow : Error { using Error::Error; };
struct NonPositiveData : Error { using Error::Error; };
struct InsufficientData : Error { using Error::Error; };
struct EigFailure : Error { using Error::Error; };
struct RootFindingFailure : Error { using Error::Error; };

// spectral classification and mode construction
struct NotAnEigenvalue : Error { using Error::Error; };
struct ConfluentBands : Error { using Error::Error; };
struct OnBoundary : Error { using Error::Error; };
struct InsideBand : Error { using Error::Error; };
struct NoDefectFrequency : Error { using Error::Error; };
struct NoDefectEigenvalue : Error { using Error::Error; };

// configuration
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

}  // namespace tbands
