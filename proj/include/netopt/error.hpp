#pragma once

#include <stdexcept>
#include <string>

namespace netopt {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Errors caused by malformed or inconsistent input data (files, rows).
/// The CLI maps these to exit code 2.
class DataError : public Error {
public:
    using Error::Error;
};

// -- graph_core --------------------------------------------------------------

class NodeOutOfRange : public Error {
public:
    using Error::Error;
};

class SelfLoop : public Error {
public:
    using Error::Error;
};

class DuplicateEdge : public Error {
public:
    using Error::Error;
};

class DisconnectedGraph : public Error {
public:
    using Error::Error;
};

class TooSmall : public Error {
public:
    using Error::Error;
};

// -- generators --------------------------------------------------------------

class BadParams : public Error {
public:
    using Error::Error;
};

// -- measures ----------------------------------------------------------------

class IsolatedNode : public Error {
public:
    using Error::Error;
};

// -- strategies --------------------------------------------------------------

class CompleteGraph : public Error {
public:
    using Error::Error;
};

class StaleMeasures : public Error {
public:
    using Error::Error;
};

class BudgetExceedsCapacity : public Error {
public:
    using Error::Error;
};

// -- experiment --------------------------------------------------------------

class EmptyInput : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

// -- io_formats --------------------------------------------------------------

/// Parse failure; carries the 1-based line/row number of the offending input.
class ParseError : public DataError {
public:
    ParseError(const std::string& msg, std::size_t line)
        : DataError(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class EmptyNetwork : public DataError {
public:
    using DataError::DataError;
};

}  // namespace netopt
