#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symcone {

enum class ErrorKind {
    SingularPoint,
    SamplingTooCoarse,
    AllSingular,
    BaseMismatch,
    NotClosed,
    SingularStart,
    CurveEndsOnL,
    DegenerateCrossing,
    UnsupportedDepth,
    SingularImage,
    BranchMismatch,
    InvalidArgument,
    InvalidCurve,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::SingularPoint: return "SingularPoint";
        case ErrorKind::SamplingTooCoarse: return "SamplingTooCoarse";
        case ErrorKind::AllSingular: return "AllSingular";
        case ErrorKind::BaseMismatch: return "BaseMismatch";
        case ErrorKind::NotClosed: return "NotClosed";
        case ErrorKind::SingularStart: return "SingularStart";
        case ErrorKind::CurveEndsOnL: return "CurveEndsOnL";
        case ErrorKind::DegenerateCrossing: return "DegenerateCrossing";
        case ErrorKind::UnsupportedDepth: return "UnsupportedDepth";
        case ErrorKind::SingularImage: return "SingularImage";
        case ErrorKind::BranchMismatch: return "BranchMismatch";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::InvalidCurve: return "InvalidCurve";
    }
    return "Unknown";
}

/// Domain error raised by every symcone operation. The kind is stable and
/// machine-checkable; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace symcone
