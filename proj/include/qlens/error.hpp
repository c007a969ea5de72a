#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qlens {

enum class ErrorKind {
    InvalidParams,
    DimensionMismatch,
    NotASolution,
    NegativeEntry,
    SquareConditionViolated,
    EmptyVector,
    SingularSystem,
    IntegralityViolated,
    InconsistentPropagation,
    InconsistentWeights,
    ArityMismatch,
    BudgetExceeded,
    NoExpectation,
    Overflow,
    ParseError,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotASolution: return "NotASolution";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::SquareConditionViolated: return "SquareConditionViolated";
    case ErrorKind::EmptyVector: return "EmptyVector";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::IntegralityViolated: return "IntegralityViolated";
    case ErrorKind::InconsistentPropagation: return "InconsistentPropagation";
    case ErrorKind::InconsistentWeights: return "InconsistentWeights";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NoExpectation: return "NoExpectation";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure in the library is reported through this type; `kind()` is the
/// stable machine-readable reason, `what()` carries detail.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

} // namespace qlens
