#include "sfmc/errors.hpp"

namespace sfmc {

const char* to_string(ErrorCategory cat) {
    switch (cat) {
    case ErrorCategory::InvalidInput:
        return "invalid-input";
    case ErrorCategory::UnattainableStatistics:
        return "unattainable-statistics";
    case ErrorCategory::NumericFailure:
        return "numeric-failure";
    case ErrorCategory::IoError:
        return "io-error";
    case ErrorCategory::ParseError:
        return "parse-error";
    case ErrorCategory::ValidationError:
        return "validation-error";
    case ErrorCategory::NoPeak:
        return "no-peak";
    case ErrorCategory::DegenerateFit:
        return "degenerate-fit";
    case ErrorCategory::UndefinedStatistic:
        return "undefined-statistic";
    case ErrorCategory::OutOfRange:
        return "out-of-range";
    }
    return "unknown";
}

} // namespace sfmc
