#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tropbasis {

/// Malformed arguments: bad dimensions, mismatched shapes.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Text input that does not follow a documented file format.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A mathematical precondition of an operation does not hold for the given input.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Something that a proven statement rules out happened. Always a bug.
class InternalInvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace tropbasis
