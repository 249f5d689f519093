#pragma once

#include <stdexcept>
#include <string>

namespace mvsv {

/// Base of every error raised by the library. `exit_code()` is the process
/// status the CLI reports for it.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 1; }
};

class NotPositiveDefinite : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

class DomainError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

// Configuration / validation failures (exit 2).
class ConfigError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

// Data failures (exit 3).
class DataError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

class InvalidData : public DataError {
public:
    using DataError::DataError;
};

class EmptyResult : public DataError {
public:
    using DataError::DataError;
};

class ParseError : public DataError {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t column)
        : DataError(what + " (row " + std::to_string(row) + ", column " + std::to_string(column) + ")"),
          row_(row), column_(column) {}
    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

class NonFiniteValue : public ParseError {
public:
    using ParseError::ParseError;
};

class RaggedRows : public DataError {
public:
    using DataError::DataError;
};

class ConstantChannel : public DataError {
public:
    using DataError::DataError;
};

class SchemaMismatch : public DataError {
public:
    using DataError::DataError;
};

class IoError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

}  // namespace mvsv
