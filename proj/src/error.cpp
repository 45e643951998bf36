#include "zlrr/error.hpp"

namespace zlrr {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonZeroLeadingCoefficient: return "NonZeroLeadingCoefficient";
        case ErrorCode::ZeroTrailingCoefficient: return "ZeroTrailingCoefficient";
        case ErrorCode::BadInitialTerms: return "BadInitialTerms";
        case ErrorCode::TableTooSmall: return "TableTooSmall";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::WrongSpecShape: return "WrongSpecShape";
        case ErrorCode::EmptyDistribution: return "EmptyDistribution";
        case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
        case ErrorCode::TooFewPoints: return "TooFewPoints";
        case ErrorCode::TooFewBins: return "TooFewBins";
        case ErrorCode::EmptyInterval: return "EmptyInterval";
        case ErrorCode::NoDominantRoot: return "NoDominantRoot";
        case ErrorCode::AmbiguousDominance: return "AmbiguousDominance";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::MissingInput: return "MissingInput";
    }
    return "UnknownError";
}

}  // namespace zlrr
