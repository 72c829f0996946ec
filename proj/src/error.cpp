#include <freqspec/error.hpp>

namespace freqspec {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
        case ErrorCode::CorruptStream: return "CorruptStream";
        case ErrorCode::ZeroDimension: return "ZeroDimension";
        case ErrorCode::EvenWindow: return "EvenWindow";
        case ErrorCode::NonSquareInput: return "NonSquareInput";
        case ErrorCode::EmptySet: return "EmptySet";
        case ErrorCode::MixedSizes: return "MixedSizes";
        case ErrorCode::IoFailure: return "IoFailure";
        case ErrorCode::InvalidQuality: return "InvalidQuality";
        case ErrorCode::EvenKernel: return "EvenKernel";
        case ErrorCode::DegenerateIntermediate: return "DegenerateIntermediate";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::SingleClass: return "SingleClass";
        case ErrorCode::NoPositives: return "NoPositives";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
        case ErrorCode::SchemaMismatch: return "SchemaMismatch";
        case ErrorCode::EmptySource: return "EmptySource";
        case ErrorCode::MissingRealSet: return "MissingRealSet";
        case ErrorCode::UnknownSource: return "UnknownSource";
        case ErrorCode::InputTooLarge: return "InputTooLarge";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace freqspec
