#pragma once

#include <stdexcept>
#include <string>

namespace ranksel {

// Statistic requested for a sample where one group is empty.
class DegenerateGroupError : public std::invalid_argument {
public:
    explicit DegenerateGroupError(const std::string& msg)
        : std::invalid_argument(msg) {}
};

// Observed value cannot be produced by any configuration (e.g. a xi value
// whose implied jump count is not an integer in the support).
class InconsistencyError : public std::invalid_argument {
public:
    explicit InconsistencyError(const std::string& msg)
        : std::invalid_argument(msg) {}
};

// Exhaustive enumeration would exceed the configured state budget.
class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(const std::string& msg)
        : std::runtime_error(msg) {}
};

// CSV / config parsing failure. Row and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, long row, long column)
        : std::runtime_error(msg), row_(row), column_(column) {}

    long row() const { return row_; }
    long column() const { return column_; }

private:
    long row_;
    long column_;
};

}  // namespace ranksel
