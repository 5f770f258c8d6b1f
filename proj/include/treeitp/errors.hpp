#pragma once

#include <stdexcept>
#include <string>

namespace treeitp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SortError : public Error {
public:
    using Error::Error;
};

class NotApplication : public Error {
public:
    using Error::Error;
};

class MalformedTree : public Error {
public:
    using Error::Error;
};

class NodeNotFound : public Error {
public:
    using Error::Error;
};

class MalformedProof : public Error {
public:
    using Error::Error;
};

class MalformedLemma : public Error {
public:
    using Error::Error;
};

class InvalidColouring : public Error {
public:
    using Error::Error;
};

class MissingColour : public Error {
public:
    using Error::Error;
};

class InternalInvariantViolation : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace treeitp
