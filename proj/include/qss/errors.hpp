#pragma once

#include <stdexcept>

namespace qss {

// Base type for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrixError : Error { using Error::Error; };
struct LabelOutOfRangeError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct InvalidPermutationError : Error { using Error::Error; };
struct EmptyKeepSetError : Error { using Error::Error; };
struct ParamViolationError : Error { using Error::Error; };
struct WrongSubsetSizeError : Error { using Error::Error; };
struct TooLargeError : Error { using Error::Error; };
struct NoCloningViolationError : Error { using Error::Error; };
struct ThresholdFloorError : Error { using Error::Error; };
struct InvalidPartitionError : Error { using Error::Error; };
struct BadSecretDimensionError : Error { using Error::Error; };
struct UnknownShareLabelError : Error { using Error::Error; };
struct SubsetTooSmallError : Error { using Error::Error; };
struct NotPureSchemeError : Error { using Error::Error; };

}  // namespace qss
