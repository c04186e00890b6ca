#pragma once

#include <stdexcept>
#include <string>

namespace qbs {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid argument or precondition violation by the caller.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A resource limit (simulator capacity) would be exceeded.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed input file or literal.
class ParseError : public Error {
public:
    using Error::Error;
};

// Wraps a failure raised inside one stage of the assessment pipeline.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what)
        : Error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace qbs
