#pragma once
#include <stdexcept>
#include <string>

namespace isl {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct RankDeficientError : Error { using Error::Error; };
struct NoConvergenceError : Error { using Error::Error; };
struct InvalidStructureError : Error { using Error::Error; };
struct NotOnManifoldError : Error { using Error::Error; };
struct InvalidParamsError : Error { using Error::Error; };
struct NotOrthogonalError : Error { using Error::Error; };
struct WrongCodimensionError : Error { using Error::Error; };
struct HypothesisError : Error { using Error::Error; };
struct DegenerateStructureError : Error { using Error::Error; };
struct ChainError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct NumericError : Error { using Error::Error; };

} // namespace isl
