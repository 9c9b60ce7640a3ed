#pragma once

#include <stdexcept>
#include <string>

namespace sfmc {

enum class ErrorCategory {
    InvalidInput,
    UnattainableStatistics,
    NumericFailure,
    IoError,
    ParseError,
    ValidationError,
    NoPeak,
    DegenerateFit,
    UndefinedStatistic,
    OutOfRange,
};

const char* to_string(ErrorCategory cat);

/// Library-wide exception carrying a machine-readable category.
class Error : public std::runtime_error {
  public:
    Error(ErrorCategory cat, const std::string& msg)
        : std::runtime_error(msg), category_(cat) {}

    ErrorCategory category() const { return category_; }

  private:
    ErrorCategory category_;
};

[[noreturn]] inline void throw_invalid(const std::string& msg) {
    throw Error(ErrorCategory::InvalidInput, msg);
}

} // namespace sfmc
