#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gfetf {

enum class ErrorKind {
    NonPrime,
    ReducibleModulus,
    NoPrimitiveFound,
    ConwayTableMiss,
    EllOutOfRange,
    ZeroElement,
    DimMismatch,
    CtxMismatch,
    NotSquare,
    NotSelfDual,
    NotHalfRate,
    DegenerateTriple,
    ConditionFailed,
    NotScalar,
    ZeroA,
    NotANorm,
    ZeroPolynomial,
    OddLength,
    NotAFrame,
    GridTooLarge,
    Parse,
    InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind k) noexcept {
    switch (k) {
        case ErrorKind::NonPrime: return "NonPrime";
        case ErrorKind::ReducibleModulus: return "ReducibleModulus";
        case ErrorKind::NoPrimitiveFound: return "NoPrimitiveFound";
        case ErrorKind::ConwayTableMiss: return "ConwayTableMiss";
        case ErrorKind::EllOutOfRange: return "EllOutOfRange";
        case ErrorKind::ZeroElement: return "ZeroElement";
        case ErrorKind::DimMismatch: return "DimMismatch";
        case ErrorKind::CtxMismatch: return "CtxMismatch";
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::NotSelfDual: return "NotSelfDual";
        case ErrorKind::NotHalfRate: return "NotHalfRate";
        case ErrorKind::DegenerateTriple: return "DegenerateTriple";
        case ErrorKind::ConditionFailed: return "ConditionFailed";
        case ErrorKind::NotScalar: return "NotScalar";
        case ErrorKind::ZeroA: return "ZeroA";
        case ErrorKind::NotANorm: return "NotANorm";
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::OddLength: return "OddLength";
        case ErrorKind::NotAFrame: return "NotAFrame";
        case ErrorKind::GridTooLarge: return "GridTooLarge";
        case ErrorKind::Parse: return "Parse";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can map it to an exit code and tests can match on it.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace gfetf
