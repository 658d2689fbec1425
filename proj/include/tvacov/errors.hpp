#pragma once

#include <stdexcept>
#include <string>

namespace tvacov {

/// Failure categories; the CLI maps each one to a distinct exit code.
enum class ErrorCategory { Config, Parse, Numeric, Tuning };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    [[nodiscard]] ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorCategory::Config, what) {}
};

/// A lag that is out of range for the series or for the estimator (k >= n, k >= h).
class InvalidLagError : public ConfigError {
public:
    explicit InvalidLagError(const std::string& what) : ConfigError(what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(ErrorCategory::Parse, what), line_(line) {}

    /// 1-based line number of the offending input row, 0 when not line-specific.
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(ErrorCategory::Numeric, what) {}
};

/// Local-linear design matrix is (numerically) singular at the evaluation point.
class SingularDesignError : public NumericError {
public:
    SingularDesignError(const std::string& what, double t) : NumericError(what), t_(t) {}

    [[nodiscard]] double t() const noexcept { return t_; }

private:
    double t_;
};

/// A band was requested with a non-positive standard deviation curve.
class DegenerateVarianceError : public NumericError {
public:
    explicit DegenerateVarianceError(const std::string& what) : NumericError(what) {}
};

/// Evaluation grids of two curves do not line up.
class AlignmentError : public NumericError {
public:
    explicit AlignmentError(const std::string& what) : NumericError(what) {}
};

class TuningError : public Error {
public:
    explicit TuningError(const std::string& what) : Error(ErrorCategory::Tuning, what) {}
};

}  // namespace tvacov
