#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace freqspec {

enum class ErrorCode {
    UnsupportedFormat,
    CorruptStream,
    ZeroDimension,
    EvenWindow,
    NonSquareInput,
    EmptySet,
    MixedSizes,
    IoFailure,
    InvalidQuality,
    EvenKernel,
    DegenerateIntermediate,
    InvalidSpec,
    SingleClass,
    NoPositives,
    ShapeMismatch,
    DimensionMismatch,
    TooFewSamples,
    NonFiniteLoss,
    SchemaMismatch,
    EmptySource,
    MissingRealSet,
    UnknownSource,
    InputTooLarge,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; inspect code() to branch on the failure kind.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace freqspec
